#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sawlab/exact.hpp"

namespace sawlab {

class GraphOracle;

/// A word over the generator alphabet, as generator indices.
using Word = std::vector<std::size_t>;

/// Letter counts of an infinite relator family: the n-th member (n >= 0) has
/// count vector u0 + n * u1.
struct ParamRelatorFamily {
  std::vector<std::int64_t> u0;
  std::vector<std::int64_t> u1;
};

/// A group presentation <S | R> in which inverses are ordinary generator
/// symbols tied together by relators.
class Presentation {
 public:
  /// Parses the JSON presentation document. Throws InputError.
  static Presentation parse(std::string_view json_text);

  Presentation(std::vector<std::string> generators,
               std::vector<std::pair<std::string, std::string>> inverse_pairs,
               std::vector<std::string> relators,
               std::vector<ParamRelatorFamily> families = {});

  const std::vector<std::string>& generators() const { return generators_; }
  const std::vector<std::pair<std::size_t, std::size_t>>& inverse_pairs() const {
    return inverse_pairs_;
  }
  const std::vector<Word>& relators() const { return relators_; }
  const std::vector<ParamRelatorFamily>& families() const { return families_; }

  std::optional<std::size_t> index_of(std::string_view symbol) const;

  /// Space-separated symbols. Throws InputError on unknown symbols.
  Word parse_word(std::string_view text) const;
  std::string format_word(const Word& w) const;

  /// Inverse symbol of generator i, when declared.
  std::optional<std::size_t> inverse_of(std::size_t i) const;

  std::string to_json() const;

 private:
  std::vector<std::string> generators_;
  std::vector<std::pair<std::size_t, std::size_t>> inverse_pairs_;
  std::vector<Word> relators_;
  std::vector<ParamRelatorFamily> families_;
};

struct CoefficientMatrix {
  std::size_t columns = 0;
  std::vector<std::vector<std::int64_t>> rows;
  std::vector<std::string> row_labels;  // relator text, or "family k: u0" / "u1"
};

struct KernelBasis {
  std::vector<IntegerVector> vectors;
};

/// An integer vector gamma in the null space of the coefficient matrix.
struct GroupHeightSpec {
  std::vector<std::int64_t> gamma;
};

CoefficientMatrix coefficient_matrix(const Presentation& p);

std::size_t rank_exact(const CoefficientMatrix& c);

/// Primitive integer basis of N(C), deterministic (echelon order, first
/// non-zero entry positive). Empty iff rank(C) = |S|.
KernelBasis integer_kernel_basis(const CoefficientMatrix& c);

bool ghf_exists(const Presentation& p);
std::size_t betti(const Presentation& p);

/// Throws InputError if gamma is zero, has the wrong length, or is not in N(C).
GroupHeightSpec make_group_height(const Presentation& p, std::vector<std::int64_t> gamma);

/// The first kernel basis vector, if any.
std::optional<GroupHeightSpec> primitive_group_height(const Presentation& p);

std::int64_t evaluate_ghf(const GroupHeightSpec& spec, const Word& word);
std::int64_t evaluate_ghf(const GroupHeightSpec& spec, const Presentation& p,
                          std::string_view word);

struct WellDefinedReport {
  bool ok = true;
  std::optional<std::string> witness;  // violated relator, or spelling conflict on the model
  std::size_t vertices_checked = 0;
};

/// Checks gamma . u = 0 on every coefficient row. If a catalog model whose
/// edge labels are the presentation's generators is supplied, additionally
/// checks that every edge (v, vs) of the radius-`depth` ball raises the
/// height by exactly gamma_s, i.e. all spellings of a vertex agree.
WellDefinedReport verify_well_defined(const GroupHeightSpec& spec, const Presentation& p,
                                      int depth = 0, const GraphOracle* model = nullptr);

std::int64_t d_of_ghf(const GroupHeightSpec& spec);

}  // namespace sawlab
