#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sawlab/exact.hpp"
#include "sawlab/graph.hpp"
#include "sawlab/periodic.hpp"
#include "sawlab/presentation.hpp"

namespace sawlab {

/// An integer-valued function on the vertices of a model.
struct HeightFunction {
  std::string name;
  std::function<std::int64_t(const Vertex&)> value;

  std::int64_t operator()(const Vertex& v) const { return value(v); }
};

/// Difference-invariant function on a periodic cover,
/// psi(o, x) = offsets[o] + <lambda, x>.
struct HarmonicSolution {
  RationalVector lambda;
  RationalVector offsets;

  Rational value(const Vertex& cover_vertex) const;
  /// Increment psi(head) - psi(tail) along a directed quotient edge.
  Rational increment(const VoltageEdge& e) const;
};

/// deg(o) f(o) - sum over edges (o, o2, t) of (f(o2) + <lambda, t>), per orbit.
RationalVector harmonic_residuals(const PeriodicGraph& pg, const HarmonicSolution& s);
bool is_harmonic(const PeriodicGraph& pg, const HarmonicSolution& s);

/// Affine data of a difference-invariant function on one orbit:
/// F(base, x) = offset + <lambda, x>.
struct BoundaryData {
  RationalVector lambda;
  Rational offset;
};

/// Recovers BoundaryData from sampled values F(base, x). Throws InputError if
/// the samples do not determine an affine function or contradict one (F is
/// then not difference-invariant on the orbit).
BoundaryData fit_boundary(std::size_t dim, const std::vector<std::pair<Shift, Rational>>& samples);

/// The unique harmonic difference-invariant function agreeing with F on the
/// base orbit. Throws NoSolution if the orbit equations are inconsistent.
HarmonicSolution harmonic_extension(const PeriodicGraph& pg, std::size_t base_orbit,
                                    const BoundaryData& boundary);

/// Basis of harmonic solutions with offsets[0] = 0: one per lattice direction
/// (lambda = e_i). Throws NoSolution naming any direction without a solution.
std::vector<HarmonicSolution> solution_space(const PeriodicGraph& pg);

struct IntegerAffineHeight {
  std::vector<std::int64_t> lambda;
  std::vector<std::int64_t> offsets;
};

struct IncreaseWitness {
  std::size_t orbit;
  Vertex lower;
  Vertex higher;
};

struct RepairResult {
  std::vector<std::int64_t> coefficients;  // integer weights of the basis
  Integer scale;                           // clears denominators
  HarmonicSolution combined;               // sum of weighted basis (before scaling)
  IntegerAffineHeight height;              // scale * combined
  std::vector<IncreaseWitness> witnesses;  // one per orbit representative
};

/// Searches integer combinations of the basis (by max-norm, then L1 norm,
/// then descending lexicographic order) for one where every orbit
/// representative has a strictly lower and a strictly higher neighbour, then
/// scales it to integers. Throws NoSolution when the search bound is exhausted
/// or every basis solution is constant.
RepairResult increase_repair(const PeriodicGraph& pg, const std::vector<HarmonicSolution>& basis,
                             int max_norm = 8);

HeightFunction affine_height(const IntegerAffineHeight& h, std::string name = "harmonic");

/// JSON export: exact fractions, scale, integer data and increase witnesses.
std::string export_height_json(const PeriodicGraph& pg, const RepairResult& r);

// -- verification -----------------------------------------------------------

struct HeightAxiomReport {
  bool root_zero = true;
  std::optional<Vertex> no_lower;       // first vertex without a lower neighbour
  std::optional<Vertex> no_higher;      // first vertex without a higher neighbour
  std::optional<std::string> invariance_failure;
  std::size_t vertices_checked = 0;

  bool ok() const { return root_zero && !no_lower && !no_higher && !invariance_failure; }
  std::string summary() const;
};

/// h(root) = 0, difference-invariance under the model's symmetries (checked as
/// h(s v) - h(v) = h(s root) - h(root) on the ball), and strict increase at
/// every vertex of the radius ball. Failures are reported in ball order.
HeightAxiomReport verify_height_axioms(const GraphOracle& g, const HeightFunction& h, int radius);

struct HarmonicReport {
  std::vector<Vertex> vertices;   // ball order
  std::vector<Rational> defects;  // h(v) - mean of neighbours

  bool harmonic() const;
  /// The common defect if it is the same at every vertex.
  std::optional<Rational> uniform_defect() const;
};

HarmonicReport verify_harmonic(const GraphOracle& g, const HeightFunction& h, int radius);

/// max |h(u) - h(v)| over edges leaving the radius ball.
std::int64_t compute_d(const GraphOracle& g, const HeightFunction& h, int radius);

/// Least r such that from each orbit representative u, every other orbit
/// contains a vertex v' with h(u) < h(v') reached by a SAW of length <= r
/// whose interior stays strictly between h(u) and h(v'). 0 for a single
/// orbit; nullopt if some pair needs more than `bound` steps.
std::optional<int> compute_r(const GraphOracle& g, const HeightFunction& h,
                             const std::vector<Vertex>& orbit_reps, int bound);

// -- height constructors ------------------------------------------------------

/// Group height function transported to a catalog model: through the model's
/// spelling, or for periodic covers by solving for the matching affine data.
/// Throws InputError if the model is not labelled by the presentation.
HeightFunction ghf_height(const GraphOracle& model, const GroupHeightSpec& spec);

/// The exact affine data of a group height function on a labelled periodic cover.
IntegerAffineHeight ghf_affine(const PeriodicCover& cover, const GroupHeightSpec& spec);

HeightFunction coordinate_height(std::size_t index, std::string name = "x");
HeightFunction level_height();

/// Named heights for catalog models: "x" / "identity" (first coordinate or
/// line position), "ghf" (primitive kernel vector of the model's
/// presentation), "level" (grandparent), "harmonic" (repaired periodic
/// solution), "default" (the model's natural choice).
HeightFunction named_height(const GraphOracle& model, std::string_view model_id,
                            std::string_view height_id);

}  // namespace sawlab
