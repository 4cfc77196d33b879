#pragma once

#include <symplab/cocycle.hpp>

#include <optional>
#include <string>
#include <vector>

namespace symplab {

struct Generator {
    std::string name;
    SympMap map;
    // Present when the map is a Hamiltonian time-one map; enables the
    // analytic norm upper bound.
    std::optional<IsotopySpec> isotopy;
};

struct GeneratingSet {
    std::vector<Generator> gens;
    bool free_hint = false;  // treat words as elements of a free group
    int bfs_radius_cap = 8;

    int find(const std::string& name) const;
};

// Word in the generators: (index, +1 or -1) letters, leftmost applied last.
struct GroupWord {
    std::vector<std::pair<int, int>> letters;

    static GroupWord single(int index, int sign = 1) { return {{{index, sign}}}; }
    GroupWord inverse_word() const;
    GroupWord repeated(int n) const;  // n >= 0 concatenated copies
    SympMap to_map(const GeneratingSet& S) const;
    int reduced_letter_count() const;  // after free cancellation
};

struct WordLengthResult {
    int length = 0;
    bool exact = true;  // false: BFS cap hit, length is only an upper bound
};

// Word length of the element w represents. Free hint: free reduction.
// Otherwise BFS over the Cayley ball up to the radius cap, identifying
// elements by quantized images of fixed sample points; past the cap the
// reduced letter count is returned as a flagged upper bound.
WordLengthResult word_length(const ManifoldModel& model, const GeneratingSet& S,
                             const GroupWord& w);

struct TranslationLengthRow {
    int n = 0;
    int length = 0;
    double ratio = 0.0;
    bool exact = true;
};
struct TranslationLengthEstimate {
    double value = 0.0;  // inf over the table of |g^n|/n; >= the true limit
    bool exact = true;   // all word lengths below were exact
    std::vector<TranslationLengthRow> table;
};
TranslationLengthEstimate translation_length_estimate(const ManifoldModel& model,
                                                      const GeneratingSet& S, const GroupWord& g,
                                                      int n_max);

// max over probes of |G(g, h)|: a certified lower bound for sup_h |G(g,h)|.
double sampled_norm_lower_bound(const CocycleContext& ctx, const SympMap& g,
                                const std::vector<SympMap>& probes);

// 2 (C L + max |H|) on a grid over the support ball: C = max primitive norm,
// L = max metric norm of dH (the speed of the isotopy). An upper bound for
// sup_h |G(g,h)| of the time-one map g.
double analytic_norm_upper_bound(const CocycleContext& ctx, const IsotopySpec& iso,
                                 int grid = 33);

struct NormEstimate {
    double lower = 0.0;
    double upper = 0.0;
};
NormEstimate semibounded_norm_estimate(const CocycleContext& ctx, const IsotopySpec& iso,
                                       const std::vector<SympMap>& probes, int grid = 33);

// max over probes h of |G(fg,h)| - |G(f,g)| - |G(f,gh)| - |G(g,h)|, which
// the cocycle identity forces to be <= 0 up to quadrature error.
double lemma_two_check(const CocycleContext& ctx, const SympMap& f, const SympMap& g,
                       const std::vector<SympMap>& probes);

struct PolterovichReport {
    double cocycle_value = 0.0;      // G(g, h)
    double action_difference = 0.0;  // F(h x) - F(x) along the isotopy
    double cross_residual = 0.0;
    std::vector<PowerTableRow> linearity;
    double max_linearity_rel_error = 0.0;
    bool growth_monotone = false;  // n -> |G(g^n,h)| strictly increasing
    double max_generator_norm_lower = 0.0;
    double translation_length_bound = 0.0;  // |G(g,h)| / (2 max generator norm)
    std::string caveat;
};

// Distortion diagnostic for a time-one map g fixing both the basepoint and
// h(basepoint). The final bound divides by sampled generator norms, which
// are lower bounds, so it overestimates the certified quotient; the caveat
// in the report says so.
PolterovichReport polterovich_report(const CocycleContext& ctx, const IsotopySpec& g_iso,
                                     const SympMap& h, const GeneratingSet& S,
                                     const std::vector<SympMap>& probes, int n_max);

}  // namespace symplab
