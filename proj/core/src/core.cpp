#include "hgdist/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

namespace hgdist {

namespace {

const Rational kSumTolerance(1, 1000000000000LL);  // 1e-12

void check_vertex(const VertexUniverse& u, VertexId v) {
    if (v >= u.size()) {
        throw std::invalid_argument("vertex id " + std::to_string(v) +
                                    " out of range for universe of size " +
                                    std::to_string(u.size()));
    }
}

}  // namespace

namespace detail {

void require_same_universe(const VertexUniverse& a, const VertexUniverse& b) {
    if (!(a == b)) throw std::invalid_argument("universe mismatch between operands");
}

std::uint64_t tuple_count(std::size_t support, std::size_t arity) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < arity; ++i) {
        if (support != 0 && count > std::numeric_limits<std::uint64_t>::max() / support) {
            return std::numeric_limits<std::uint64_t>::max();
        }
        count *= support;
    }
    return count;
}

}  // namespace detail

// --------------------------------------------------------------------------
// VertexUniverse
// --------------------------------------------------------------------------

VertexUniverse::VertexUniverse(std::size_t size) : size_(size) {
    if (size == 0) throw std::invalid_argument("universe must have at least one vertex");
}

VertexUniverse::VertexUniverse(std::size_t size, std::vector<std::string> labels)
    : size_(size), labels_(std::move(labels)) {
    if (size == 0) throw std::invalid_argument("universe must have at least one vertex");
    if (!labels_.empty() && labels_.size() != size) {
        throw std::invalid_argument("label list must have exactly one entry per vertex");
    }
}

// --------------------------------------------------------------------------
// Distribution
// --------------------------------------------------------------------------

Distribution::Distribution(std::shared_ptr<const VertexUniverse> universe,
                           std::vector<Rational> probs)
    : universe_(std::move(universe)), probs_(std::move(probs)) {
    if (!universe_) throw std::invalid_argument("distribution needs a universe");
    if (probs_.size() != universe_->size()) {
        throw std::invalid_argument("probability vector length must equal universe size");
    }
    Rational sum = 0;
    for (std::size_t v = 0; v < probs_.size(); ++v) {
        if (probs_[v] < 0) throw std::invalid_argument("negative probability entry");
        if (probs_[v] > 0) support_.push_back(static_cast<VertexId>(v));
        sum += probs_[v];
    }
    if (rat_abs(sum - 1) > kSumTolerance) {
        throw std::invalid_argument("probabilities must sum to 1 (got " + rat_str(sum) + ")");
    }
    if (support_.empty()) throw std::invalid_argument("distribution has empty support");
}

Distribution Distribution::from_doubles(std::shared_ptr<const VertexUniverse> universe,
                                        const std::vector<double>& probs) {
    std::vector<Rational> r;
    r.reserve(probs.size());
    for (double p : probs) r.emplace_back(p);
    return Distribution(std::move(universe), std::move(r));
}

Distribution Distribution::point_mass(std::shared_ptr<const VertexUniverse> universe, VertexId v) {
    check_vertex(*universe, v);
    std::vector<Rational> r(universe->size(), Rational(0));
    r[v] = 1;
    return Distribution(std::move(universe), std::move(r));
}

Distribution Distribution::uniform(std::shared_ptr<const VertexUniverse> universe) {
    const std::size_t n = universe->size();
    std::vector<Rational> r(n, Rational(1, static_cast<std::int64_t>(n)));
    return Distribution(std::move(universe), std::move(r));
}

Distribution Distribution::empirical(std::shared_ptr<const VertexUniverse> universe,
                                     std::span<const VertexId> sample) {
    if (sample.empty()) throw std::invalid_argument("empirical distribution of an empty sample");
    std::vector<Rational> r(universe->size(), Rational(0));
    const Rational unit(1, static_cast<std::int64_t>(sample.size()));
    for (VertexId v : sample) {
        check_vertex(*universe, v);
        r[v] += unit;
    }
    return Distribution(std::move(universe), std::move(r));
}

// --------------------------------------------------------------------------
// Hypergraph
// --------------------------------------------------------------------------

namespace {

struct EdgeLess {
    std::size_t arity;
    bool operator()(std::size_t a, std::size_t b) const { return a < b; }
};

bool flat_edge_less(const VertexId* a, const VertexId* b, std::size_t k) {
    return std::lexicographical_compare(a, a + k, b, b + k);
}

}  // namespace

Hypergraph Hypergraph::from_edges(std::shared_ptr<const VertexUniverse> universe,
                                  std::size_t arity, const std::vector<Edge>& edges) {
    if (!universe) throw std::invalid_argument("hypergraph needs a universe");
    if (arity < 1) throw std::invalid_argument("arity must be at least 1");
    std::vector<Edge> canon;
    canon.reserve(edges.size());
    for (const Edge& e : edges) {
        if (e.size() != arity) {
            throw std::invalid_argument("edge tuple length does not match arity");
        }
        Edge s = e;
        std::sort(s.begin(), s.end());
        for (VertexId v : s) check_vertex(*universe, v);
        canon.push_back(std::move(s));
    }
    std::sort(canon.begin(), canon.end());
    canon.erase(std::unique(canon.begin(), canon.end()), canon.end());
    std::vector<VertexId> flat;
    flat.reserve(canon.size() * arity);
    for (const Edge& e : canon) flat.insert(flat.end(), e.begin(), e.end());
    return Hypergraph(std::move(universe), arity, std::move(flat));
}

Hypergraph Hypergraph::from_canonical(std::shared_ptr<const VertexUniverse> universe,
                                      std::size_t arity, std::vector<VertexId> flat) {
    if (!universe) throw std::invalid_argument("hypergraph needs a universe");
    if (arity < 1) throw std::invalid_argument("arity must be at least 1");
    if (flat.size() % arity != 0) throw std::invalid_argument("flat edge data not a multiple of arity");
    const std::size_t count = flat.size() / arity;
    for (std::size_t i = 0; i < count; ++i) {
        const VertexId* e = flat.data() + i * arity;
        for (std::size_t j = 0; j < arity; ++j) {
            check_vertex(*universe, e[j]);
            if (j > 0 && e[j - 1] > e[j]) {
                throw std::invalid_argument("non-canonical edge tuple (not sorted non-decreasing)");
            }
        }
        if (i > 0) {
            const VertexId* prev = flat.data() + (i - 1) * arity;
            if (!flat_edge_less(prev, e, arity)) {
                throw std::invalid_argument(
                    "non-canonical edge list (must be strictly increasing, duplicate-free)");
            }
        }
    }
    return Hypergraph(std::move(universe), arity, std::move(flat));
}

bool Hypergraph::contains(std::span<const VertexId> tuple) const {
    if (tuple.size() != arity_) throw std::invalid_argument("tuple length does not match arity");
    Edge sorted(tuple.begin(), tuple.end());
    std::sort(sorted.begin(), sorted.end());
    return contains_sorted(sorted);
}

bool Hypergraph::contains_sorted(std::span<const VertexId> tuple) const {
    const std::size_t count = edge_count();
    std::size_t lo = 0, hi = count;
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        const VertexId* e = flat_.data() + mid * arity_;
        if (flat_edge_less(e, tuple.data(), arity_)) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    if (lo == count) return false;
    const VertexId* e = flat_.data() + lo * arity_;
    return std::equal(e, e + arity_, tuple.begin());
}

std::uint64_t Hypergraph::ordering_count(std::size_t i) const {
    std::span<const VertexId> e = edge(i);
    std::uint64_t result = 1;
    for (std::size_t j = 2; j <= arity_; ++j) result *= j;
    std::size_t run = 1;
    for (std::size_t j = 1; j <= arity_; ++j) {
        if (j < arity_ && e[j] == e[j - 1]) {
            ++run;
        } else {
            std::uint64_t f = 1;
            for (std::size_t r = 2; r <= run; ++r) f *= r;
            result /= f;
            run = 1;
        }
    }
    return result;
}

Hypergraph Hypergraph::complement() const {
    if (arity_ != 1) throw std::invalid_argument("complement is defined for arity-1 graphs");
    std::vector<Edge> edges;
    std::size_t idx = 0;
    for (VertexId v = 0; v < universe_->size(); ++v) {
        if (idx < edge_count() && flat_[idx] == v) {
            ++idx;
        } else {
            edges.push_back({v});
        }
    }
    return from_edges(universe_, 1, edges);
}

std::string Hypergraph::canonical_bytes() const {
    std::string out;
    out.reserve(flat_.size() * 4 + 8);
    auto push32 = [&out](std::uint32_t x) {
        for (int b = 0; b < 4; ++b) out.push_back(static_cast<char>((x >> (8 * b)) & 0xff));
    };
    push32(static_cast<std::uint32_t>(arity_));
    push32(static_cast<std::uint32_t>(universe_->size()));
    for (VertexId v : flat_) push32(v);
    return out;
}

// --------------------------------------------------------------------------
// DistinguishingClass
// --------------------------------------------------------------------------

DistinguishingClass DistinguishingClass::from_graphs(std::vector<Hypergraph> graphs) {
    if (graphs.empty()) throw std::invalid_argument("distinguishing class must be non-empty");
    const std::size_t arity = graphs.front().arity();
    const VertexUniverse& u = graphs.front().universe();
    std::set<std::string> seen;
    for (const Hypergraph& g : graphs) {
        if (g.arity() != arity) throw std::invalid_argument("class members must share arity");
        detail::require_same_universe(u, g.universe());
        if (!seen.insert(g.canonical_bytes()).second) {
            throw std::invalid_argument("duplicate graph in distinguishing class");
        }
    }
    return DistinguishingClass(std::move(graphs));
}

// --------------------------------------------------------------------------
// Sample
// --------------------------------------------------------------------------

Sample::Sample(std::shared_ptr<const VertexUniverse> universe, std::vector<VertexId> vertices)
    : universe_(std::move(universe)), vertices_(std::move(vertices)) {
    if (!universe_) throw std::invalid_argument("sample needs a universe");
    if (vertices_.empty()) throw std::invalid_argument("sample must be non-empty");
    for (VertexId v : vertices_) check_vertex(*universe_, v);
}

std::vector<std::uint32_t> Sample::counts() const {
    std::vector<std::uint32_t> c(universe_->size(), 0);
    for (VertexId v : vertices_) ++c[v];
    return c;
}

// --------------------------------------------------------------------------
// Frequencies
// --------------------------------------------------------------------------

// L_P(g): the sum over ordered tuples collapses to a sum over canonical edges,
// each weighted by its number of distinct orderings. Identical to the ordered
// enumeration, restricted to edges (tuples off the edge set contribute 0).
Rational edge_freq_true(const Hypergraph& g, const Distribution& p, std::uint64_t budget) {
    detail::require_same_universe(g.universe(), p.universe());
    const std::uint64_t tuples = detail::tuple_count(p.support().size(), g.arity());
    if (tuples > budget) {
        throw BudgetExceededError(tuples, budget,
                                  "estimate via edge_freq_empirical on a drawn sample instead");
    }
    Rational total = 0;
    const std::size_t k = g.arity();
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
        std::span<const VertexId> e = g.edge(i);
        Rational term = 1;
        bool zero = false;
        for (std::size_t j = 0; j < k; ++j) {
            const Rational& pv = p.prob(e[j]);
            if (pv == 0) {
                zero = true;
                break;
            }
            term *= pv;
        }
        if (zero) continue;
        total += term * Rational(g.ordering_count(i));
    }
    return total;
}

// L_S(g): positions are distinguishable, so each canonical edge contributes
// (orderings) * prod_v count(v)^multiplicity ordered index tuples.
Rational edge_freq_empirical(const Hypergraph& g, const Sample& s, std::uint64_t budget) {
    detail::require_same_universe(g.universe(), s.universe());
    const std::uint64_t tuples = detail::tuple_count(s.size(), g.arity());
    if (tuples > budget) {
        throw BudgetExceededError(tuples, budget, "reduce sample size or raise the budget");
    }
    const std::vector<std::uint32_t> counts = s.counts();
    const std::size_t k = g.arity();
    std::uint64_t matched = 0;
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
        std::span<const VertexId> e = g.edge(i);
        std::uint64_t term = g.ordering_count(i);
        for (std::size_t j = 0; j < k && term != 0; ++j) term *= counts[e[j]];
        // ordering_count * prod counts^mult double-counts repeats; recompute
        // properly: for a run of r equal vertices the factor is count^r, and
        // ordering_count already accounts for indistinct permutations.
        matched += term;
    }
    return Rational(matched, tuples);
}

Hypergraph project(const Hypergraph& g, std::span<const VertexId> pins) {
    const std::size_t n = pins.size();
    if (n < 1) throw std::invalid_argument("projection needs at least one pinned vertex");
    if (n >= g.arity()) {
        throw std::invalid_argument("projection must pin fewer vertices than the arity");
    }
    Edge sorted_pins(pins.begin(), pins.end());
    std::sort(sorted_pins.begin(), sorted_pins.end());
    for (VertexId v : sorted_pins) check_vertex(g.universe(), v);

    const std::size_t k = g.arity();
    std::vector<Edge> result;
    Edge rest;
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
        std::span<const VertexId> e = g.edge(i);
        // multiset containment: every pin must be matched by a distinct slot
        rest.clear();
        std::size_t pi = 0;
        for (std::size_t j = 0; j < k; ++j) {
            if (pi < n && e[j] == sorted_pins[pi]) {
                ++pi;
            } else {
                rest.push_back(e[j]);
            }
        }
        if (pi == n) result.push_back(rest);
    }
    return Hypergraph::from_edges(g.universe_ptr(), k - n, result);
}

DistinguishingClass project_class(const DistinguishingClass& c, std::span<const VertexId> pins) {
    std::vector<Hypergraph> graphs;
    std::set<std::string> seen;
    for (const Hypergraph& g : c.graphs()) {
        Hypergraph pg = project(g, pins);
        if (seen.insert(pg.canonical_bytes()).second) graphs.push_back(std::move(pg));
    }
    return DistinguishingClass::from_graphs(std::move(graphs));
}

Distribution mixture(const Distribution& p, VertexId v, const Rational& q) {
    check_vertex(p.universe(), v);
    if (q < 0 || q > 1) throw std::invalid_argument("mixture weight must lie in [0,1]");
    std::vector<Rational> probs(p.size());
    const Rational keep = Rational(1) - q;
    for (std::size_t u = 0; u < p.size(); ++u) probs[u] = keep * p.prob(static_cast<VertexId>(u));
    probs[v] += q;
    return Distribution(p.universe_ptr(), std::move(probs));
}

std::vector<VertexId> draw_iid(const Distribution& p, std::size_t m, RngEngine& eng) {
    // inverse CDF over the support, cumulative in double
    const std::vector<VertexId>& sup = p.support();
    std::vector<double> cum(sup.size());
    double acc = 0;
    for (std::size_t i = 0; i < sup.size(); ++i) {
        acc += to_double(p.prob(sup[i]));
        cum[i] = acc;
    }
    cum.back() = 1.0;
    std::vector<VertexId> out(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double u = uniform_unit(eng);
        const auto it = std::upper_bound(cum.begin(), cum.end(), u);
        const std::size_t idx = std::min<std::size_t>(it - cum.begin(), sup.size() - 1);
        out[i] = sup[idx];
    }
    return out;
}

Sample sample_from(const Distribution& p, std::size_t m, std::uint64_t seed) {
    if (m < 1) throw std::invalid_argument("sample size must be at least 1");
    RngEngine eng = make_engine(seed);
    return Sample(p.universe_ptr(), draw_iid(p, m, eng));
}

VertexId draw_mixture(const Distribution& p, VertexId v, double q, RngEngine& eng) {
    if (uniform_unit(eng) < q) return v;
    return draw_iid(p, 1, eng).front();
}

}  // namespace hgdist
