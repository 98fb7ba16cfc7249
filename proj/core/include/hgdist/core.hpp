#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hgdist/rational.hpp"
#include "hgdist/rng.hpp"

namespace hgdist {

using VertexId = std::uint32_t;
using Edge = std::vector<VertexId>;  // canonical: sorted non-decreasing, length == arity

inline constexpr std::uint64_t kDefaultEnumerationBudget = 100'000'000;

// Thrown when an exact enumeration would exceed its tuple budget. Callers
// should fall back to sampled estimation (edge_freq_empirical on drawn samples).
class BudgetExceededError : public std::runtime_error {
  public:
    BudgetExceededError(std::uint64_t required, std::uint64_t budget, const std::string& hint)
        : std::runtime_error("enumeration budget exceeded: needs " + std::to_string(required) +
                             " tuples, budget is " + std::to_string(budget) + "; " + hint),
          required_(required),
          budget_(budget) {}
    std::uint64_t required() const { return required_; }
    std::uint64_t budget() const { return budget_; }

  private:
    std::uint64_t required_;
    std::uint64_t budget_;
};

// ---------------------------------------------------------------------------
// Domain types. All immutable after construction and safe to share across
// threads; operations below are pure functions of their inputs.
// ---------------------------------------------------------------------------

/// Finite set of vertices, identified as 0..size()-1. Labels are optional
/// per-vertex metadata (constructions use them to record subset encodings).
class VertexUniverse {
  public:
    explicit VertexUniverse(std::size_t size);
    VertexUniverse(std::size_t size, std::vector<std::string> labels);

    std::size_t size() const { return size_; }
    bool has_labels() const { return !labels_.empty(); }
    const std::string& label(VertexId v) const { return labels_.at(v); }
    const std::vector<std::string>& labels() const { return labels_; }

    bool operator==(const VertexUniverse& other) const {
        return size_ == other.size_ && labels_ == other.labels_;
    }

  private:
    std::size_t size_;
    std::vector<std::string> labels_;
};

/// Probability vector over a universe. Entries are exact rationals; doubles
/// convert losslessly on the way in. Entries must be >= 0 and sum to 1 within
/// 1e-12 (exactly 1 when built from rationals that sum to 1).
class Distribution {
  public:
    Distribution(std::shared_ptr<const VertexUniverse> universe, std::vector<Rational> probs);

    static Distribution from_doubles(std::shared_ptr<const VertexUniverse> universe,
                                     const std::vector<double>& probs);
    static Distribution point_mass(std::shared_ptr<const VertexUniverse> universe, VertexId v);
    static Distribution uniform(std::shared_ptr<const VertexUniverse> universe);
    /// Empirical distribution of a sample (counts / m).
    static Distribution empirical(std::shared_ptr<const VertexUniverse> universe,
                                  std::span<const VertexId> sample);

    const std::shared_ptr<const VertexUniverse>& universe_ptr() const { return universe_; }
    const VertexUniverse& universe() const { return *universe_; }
    std::size_t size() const { return probs_.size(); }
    const Rational& prob(VertexId v) const { return probs_.at(v); }
    const std::vector<Rational>& probs() const { return probs_; }
    /// Vertices with strictly positive mass; never empty.
    const std::vector<VertexId>& support() const { return support_; }

  private:
    std::shared_ptr<const VertexUniverse> universe_;
    std::vector<Rational> probs_;
    std::vector<VertexId> support_;
};

/// Arity-k symmetric Boolean edge predicate. Edges are multisets stored as
/// sorted tuples (repeats allowed, so self-loops are first-class); membership
/// of an arbitrary tuple is evaluated by sorting it, which is what makes the
/// predicate permutation-invariant. Storage is flat: edge i occupies
/// [i*arity, (i+1)*arity) of edge_data(), in lexicographic order.
class Hypergraph {
  public:
    /// Canonicalizes: sorts each tuple, dedupes, sorts the edge list.
    static Hypergraph from_edges(std::shared_ptr<const VertexUniverse> universe,
                                 std::size_t arity, const std::vector<Edge>& edges);
    /// Requires already-canonical flat data (sorted tuples, strictly
    /// increasing edge list); used by loaders that must reject rather than fix.
    static Hypergraph from_canonical(std::shared_ptr<const VertexUniverse> universe,
                                     std::size_t arity, std::vector<VertexId> flat);

    const std::shared_ptr<const VertexUniverse>& universe_ptr() const { return universe_; }
    const VertexUniverse& universe() const { return *universe_; }
    std::size_t arity() const { return arity_; }
    std::size_t edge_count() const { return arity_ == 0 ? 0 : flat_.size() / arity_; }
    std::span<const VertexId> edge(std::size_t i) const {
        return {flat_.data() + i * arity_, arity_};
    }
    const std::vector<VertexId>& edge_data() const { return flat_; }

    /// Membership of an arbitrary (not necessarily sorted) tuple.
    bool contains(std::span<const VertexId> tuple) const;
    /// Membership of an already-sorted tuple.
    bool contains_sorted(std::span<const VertexId> tuple) const;

    /// Number of distinct orderings of edge i (k! over multiplicities).
    std::uint64_t ordering_count(std::size_t i) const;

    bool same_edges(const Hypergraph& other) const {
        return arity_ == other.arity_ && flat_ == other.flat_;
    }
    /// Arity-1 complement: singletons not present in this graph.
    Hypergraph complement() const;

    std::string canonical_bytes() const;  // serialization for fingerprints/memo keys

  private:
    Hypergraph(std::shared_ptr<const VertexUniverse> universe, std::size_t arity,
               std::vector<VertexId> flat)
        : universe_(std::move(universe)), arity_(arity), flat_(std::move(flat)) {}

    std::shared_ptr<const VertexUniverse> universe_;
    std::size_t arity_;
    std::vector<VertexId> flat_;
};

/// Explicit finite family of same-arity hypergraphs over one universe.
/// Duplicate members (by edge set) are rejected.
class DistinguishingClass {
  public:
    static DistinguishingClass from_graphs(std::vector<Hypergraph> graphs);

    std::size_t size() const { return graphs_.size(); }
    std::size_t arity() const { return graphs_.front().arity(); }
    const VertexUniverse& universe() const { return graphs_.front().universe(); }
    const std::shared_ptr<const VertexUniverse>& universe_ptr() const {
        return graphs_.front().universe_ptr();
    }
    const Hypergraph& graph(std::size_t i) const { return graphs_.at(i); }
    const std::vector<Hypergraph>& graphs() const { return graphs_; }

  private:
    explicit DistinguishingClass(std::vector<Hypergraph> graphs) : graphs_(std::move(graphs)) {}
    std::vector<Hypergraph> graphs_;
};

/// Ordered sequence of vertex ids, drawn IID in experiments.
class Sample {
  public:
    Sample(std::shared_ptr<const VertexUniverse> universe, std::vector<VertexId> vertices);

    const std::shared_ptr<const VertexUniverse>& universe_ptr() const { return universe_; }
    const VertexUniverse& universe() const { return *universe_; }
    std::size_t size() const { return vertices_.size(); }
    VertexId at(std::size_t i) const { return vertices_[i]; }
    const std::vector<VertexId>& vertices() const { return vertices_; }
    /// Per-vertex occurrence counts over the universe.
    std::vector<std::uint32_t> counts() const;

  private:
    std::shared_ptr<const VertexUniverse> universe_;
    std::vector<VertexId> vertices_;
};

// ---------------------------------------------------------------------------
// Elementary operations
// ---------------------------------------------------------------------------

/// Probability that k IID draws from p form an edge of g:
/// sum over ordered k-tuples of prod p(v_i) * g(v_1..v_k). Exact.
Rational edge_freq_true(const Hypergraph& g, const Distribution& p,
                        std::uint64_t budget = kDefaultEnumerationBudget);

/// With-replacement empirical analogue over sample positions: the count of
/// ordered index k-tuples whose vertex tuple is an edge, divided by m^k.
Rational edge_freq_empirical(const Hypergraph& g, const Sample& s,
                             std::uint64_t budget = kDefaultEnumerationBudget);

/// Pins the first n coordinates to fixed vertices; returns the arity-(k-n)
/// graph u -> g(pins, u). Requires 1 <= n < k.
Hypergraph project(const Hypergraph& g, std::span<const VertexId> pins);

/// Member-wise projection of a class, duplicate-free.
DistinguishingClass project_class(const DistinguishingClass& c, std::span<const VertexId> pins);

/// q * point_mass(v) + (1-q) * p, exactly.
Distribution mixture(const Distribution& p, VertexId v, const Rational& q);

/// m IID draws via inverse-CDF over the support; identical output for
/// identical (p, m, seed).
Sample sample_from(const Distribution& p, std::size_t m, std::uint64_t seed);

/// Draws m vertices from p using an existing engine (for composed samplers).
std::vector<VertexId> draw_iid(const Distribution& p, std::size_t m, RngEngine& eng);

/// One draw from q*delta_v + (1-q)*p realized as a coin flip per draw.
VertexId draw_mixture(const Distribution& p, VertexId v, double q, RngEngine& eng);

namespace detail {
void require_same_universe(const VertexUniverse& a, const VertexUniverse& b);
/// |support|^arity with saturation, for budget checks.
std::uint64_t tuple_count(std::size_t support, std::size_t arity);
}  // namespace detail

}  // namespace hgdist
