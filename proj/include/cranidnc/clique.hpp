#pragma once

// Maximum-weight clique over an undirected vertex-weighted graph.
//

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <numeric>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cranidnc/errors.hpp"

namespace cranidnc {

/// Fixed-size bitset over vertex ids used for adjacency rows and candidate sets.
class VertexBits {
public:
    VertexBits() = default;
    explicit VertexBits(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

    std::size_t capacity() const { return n_; }
    void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
    void reset(std::size_t i) { words_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
    bool test(std::size_t i) const { return ((words_[i / 64] >> (i % 64)) & 1U) != 0; }
    bool none() const
    {
        return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
    }
    std::size_t count() const
    {
        std::size_t c = 0;
        for (std::uint64_t w : words_) {
            c += static_cast<std::size_t>(std::popcount(w));
        }
        return c;
    }
    void unite(const VertexBits& other)
    {
        for (std::size_t k = 0; k < words_.size(); ++k) {
            words_[k] |= other.words_[k];
        }
    }
    void intersect(const VertexBits& other)
    {
        for (std::size_t k = 0; k < words_.size(); ++k) {
            words_[k] &= other.words_[k];
        }
    }
    /// Lowest set index at or after `from`, or capacity() when none.
    std::size_t next(std::size_t from) const
    {
        if (from >= n_) {
            return n_;
        }
        std::size_t k = from / 64;
        std::uint64_t w = words_[k] & (~std::uint64_t{0} << (from % 64));
        while (true) {
            if (w != 0) {
                return k * 64 + static_cast<std::size_t>(std::countr_zero(w));
            }
            if (++k == words_.size()) {
                return n_;
            }
            w = words_[k];
        }
    }

    template <typename Fn>
    void for_each(Fn&& fn) const
    {
        for (std::size_t k = 0; k < words_.size(); ++k) {
            for (std::uint64_t w = words_[k]; w != 0; w &= w - 1) {
                fn(k * 64 + static_cast<std::size_t>(std::countr_zero(w)));
            }
        }
    }

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> words_;
};

class WeightedGraph {
public:
    WeightedGraph() = default;
    explicit WeightedGraph(std::vector<double> weights) : weights_(std::move(weights))
    {
        for (double w : weights_) {
            if (!(w > 0.0)) {
                throw std::invalid_argument("vertex weights must be strictly positive");
            }
        }
        rows_.assign(weights_.size(), VertexBits(weights_.size()));
    }

    std::size_t size() const { return weights_.size(); }
    double weight(std::size_t v) const
    {
        detail::check_index(v, size(), "vertex");
        return weights_[v];
    }
    const std::vector<double>& weights() const { return weights_; }

    void add_edge(std::size_t a, std::size_t b)
    {
        detail::check_index(a, size(), "vertex");
        detail::check_index(b, size(), "vertex");
        if (a == b) {
            throw std::invalid_argument("self loops are not allowed");
        }
        rows_[a].set(b);
        rows_[b].set(a);
    }

    bool adjacent(std::size_t a, std::size_t b) const
    {
        detail::check_index(a, size(), "vertex");
        detail::check_index(b, size(), "vertex");
        return rows_[a].test(b);
    }

    const VertexBits& neighbors(std::size_t v) const { return rows_[v]; }

    std::size_t edge_count() const
    {
        std::size_t twice = 0;
        for (const auto& row : rows_) {
            twice += row.count();
        }
        return twice / 2;
    }

private:
    std::vector<double> weights_;
    std::vector<VertexBits> rows_;
};

struct CliqueResult {
    std::vector<std::size_t> members; // ascending vertex ids
    double total_weight = 0.0;
};

/// Sum of member weights in ascending id order, so equal sets always give
/// bit-identical totals.
inline double clique_weight(const WeightedGraph& g, std::span<const std::size_t> members)
{
    std::vector<std::size_t> sorted(members.begin(), members.end());
    std::sort(sorted.begin(), sorted.end());
    double total = 0.0;
    for (std::size_t v : sorted) {
        total += g.weight(v);
    }
    return total;
}

inline bool is_clique(const WeightedGraph& g, std::span<const std::size_t> members)
{
    for (std::size_t v : members) {
        detail::check_index(v, g.size(), "vertex");
    }
    for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t j = i + 1; j < members.size(); ++j) {
            if (members[i] == members[j] || !g.adjacent(members[i], members[j])) {
                return false;
            }
        }
    }
    return true;
}

inline CliqueResult make_clique_result(const WeightedGraph& g, std::vector<std::size_t> members)
{
    std::sort(members.begin(), members.end());
    CliqueResult r;
    r.total_weight = clique_weight(g, members);
    r.members = std::move(members);
    return r;
}

namespace detail {

/// Branch and bound with a weighted colouring bound. At every node the
/// candidates are greedily split into independent sets; a clique takes at
/// most one vertex per set, so the heaviest vertex of each set bounds its
/// contribution. Candidates are tried from the last set backwards and the
/// node stops once the running bound can no longer beat the incumbent.
class ExactCliqueSearch {
public:
    ExactCliqueSearch(const WeightedGraph& g, CliqueResult incumbent) : g_(g), n_(g.size())
    {
        // Heaviest first, so the first member of a colour class is its maximum.
        order_.resize(n_);
        std::iota(order_.begin(), order_.end(), std::size_t{0});
        std::stable_sort(order_.begin(), order_.end(),
                         [&](std::size_t a, std::size_t b) { return g.weight(a) > g.weight(b); });
        std::vector<std::size_t> position(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            position[order_[i]] = i;
        }
        weight_.resize(n_);
        rows_.assign(n_, VertexBits(n_));
        for (std::size_t i = 0; i < n_; ++i) {
            weight_[i] = g.weight(order_[i]);
            g.neighbors(order_[i]).for_each([&](std::size_t u) { rows_[i].set(position[u]); });
        }
        best_ = incumbent.total_weight;
        for (std::size_t v : incumbent.members) {
            best_members_.push_back(position[v]);
        }
    }

    CliqueResult run()
    {
        VertexBits all(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            all.set(i);
        }
        expand(0.0, all);
        std::vector<std::size_t> members;
        members.reserve(best_members_.size());
        for (std::size_t i : best_members_) {
            members.push_back(order_[i]);
        }
        return make_clique_result(g_, std::move(members));
    }

private:
    void expand(double current_weight, const VertexBits& candidates)
    {
        // Colour classes in discovery order; bound[k] sums the class maxima
        // of classes 0..class_of(vertex k).
        std::vector<std::size_t> sequence;
        std::vector<double> bound;
        colour(candidates, sequence, bound);

        VertexBits remaining = candidates;
        for (std::size_t k = sequence.size(); k-- > 0;) {
            if (current_weight + bound[k] <= best_) {
                return;
            }
            const std::size_t v = sequence[k];
            const double w = current_weight + weight_[v];
            VertexBits next = remaining;
            next.intersect(rows_[v]);
            current_.push_back(v);
            if (next.none()) {
                if (w > best_) {
                    best_ = w;
                    best_members_ = current_;
                }
            } else {
                expand(w, next);
            }
            current_.pop_back();
            remaining.reset(v);
        }
    }

    void colour(const VertexBits& candidates, std::vector<std::size_t>& sequence, std::vector<double>& bound) const
    {
        std::vector<VertexBits> blocked;          // union of neighbourhoods per class
        std::vector<std::vector<std::size_t>> classes;
        candidates.for_each([&](std::size_t v) {
            std::size_t c = 0;
            while (c < classes.size() && blocked[c].test(v)) {
                ++c;
            }
            if (c == classes.size()) {
                classes.emplace_back();
                blocked.emplace_back(n_);
            }
            classes[c].push_back(v);
            const VertexBits& row = rows_[v];
            blocked[c].unite(row);
        });
        sequence.clear();
        bound.clear();
        double running = 0.0;
        for (const auto& cls : classes) {
            running += weight_[cls.front()];
            for (std::size_t v : cls) {
                sequence.push_back(v);
                bound.push_back(running);
            }
        }
    }

    const WeightedGraph& g_;
    std::size_t n_;
    std::vector<std::size_t> order_;
    std::vector<double> weight_;
    std::vector<VertexBits> rows_;
    std::vector<std::size_t> current_;
    std::vector<std::size_t> best_members_;
    double best_ = 0.0;
};

} // namespace detail

/// Greedy maximal clique: repeatedly take the candidate maximizing
/// w(v) * (1 + weight of its neighbours among the candidates), lowest id on
/// ties, then shrink the candidates to its neighbourhood.
inline CliqueResult max_weight_clique_greedy(const WeightedGraph& g)
{
    const std::size_t n = g.size();
    VertexBits candidates(n);
    for (std::size_t v = 0; v < n; ++v) {
        candidates.set(v);
    }
    std::vector<double> neighbor_weight(n, 0.0);
    for (std::size_t v = 0; v < n; ++v) {
        g.neighbors(v).for_each([&](std::size_t u) { neighbor_weight[v] += g.weight(u); });
    }

    std::vector<std::size_t> members;
    while (!candidates.none()) {
        std::size_t pick = n;
        double best_score = -1.0;
        candidates.for_each([&](std::size_t v) {
            const double score = g.weight(v) * (1.0 + neighbor_weight[v]);
            if (score > best_score) {
                best_score = score;
                pick = v;
            }
        });
        members.push_back(pick);

        VertexBits kept = candidates;
        kept.intersect(g.neighbors(pick));
        std::vector<std::size_t> dropped;
        candidates.for_each([&](std::size_t v) {
            if (!kept.test(v)) {
                dropped.push_back(v);
            }
        });
        kept.for_each([&](std::size_t v) {
            for (std::size_t d : dropped) {
                if (g.neighbors(v).test(d)) {
                    neighbor_weight[v] -= g.weight(d);
                }
            }
        });
        candidates = std::move(kept);
    }
    return make_clique_result(g, std::move(members));
}

/// Exact maximum-weight clique, seeded with the greedy clique. Deterministic
/// for a given graph.
inline CliqueResult max_weight_clique_exact(const WeightedGraph& g)
{
    if (g.size() == 0) {
        return {};
    }
    return detail::ExactCliqueSearch(g, max_weight_clique_greedy(g)).run();
}

namespace detail {

inline std::string format_double(double value)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view text)
{
    double value = 0.0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        throw std::invalid_argument("not a number: '" + std::string(text) + "'");
    }
    return value;
}

} // namespace detail

/// DIMACS edge format with vertex weights: `p edge n m`, `e i j`, `w i weight`,
/// 1-based ids. Lines starting with `c` are comments.
inline void write_dimacs(std::ostream& out, const WeightedGraph& g, std::span<const std::string> comments = {})
{
    for (const auto& c : comments) {
        out << "c " << c << '\n';
    }
    out << "p edge " << g.size() << ' ' << g.edge_count() << '\n';
    for (std::size_t v = 0; v < g.size(); ++v) {
        out << "w " << v + 1 << ' ' << detail::format_double(g.weight(v)) << '\n';
    }
    for (std::size_t a = 0; a < g.size(); ++a) {
        g.neighbors(a).for_each([&](std::size_t b) {
            if (b > a) {
                out << "e " << a + 1 << ' ' << b + 1 << '\n';
            }
        });
    }
}

/// Reads the format produced by write_dimacs. Vertices without a `w` line get
/// weight 1. Also accepts `n i weight`, the vertex-weight line of the
/// second DIMACS challenge.
inline WeightedGraph read_dimacs(std::istream& in)
{
    std::string line;
    std::size_t n = 0;
    bool have_header = false;
    std::vector<double> weights;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::size_t line_no = 0;
    auto fail = [&](const std::string& why) {
        throw std::invalid_argument("dimacs line " + std::to_string(line_no) + ": " + why);
    };
    auto vertex_id = [&](const std::string& token) {
        std::size_t id = 0;
        auto res = std::from_chars(token.data(), token.data() + token.size(), id);
        if (res.ec != std::errc{} || res.ptr != token.data() + token.size() || id == 0 || id > n) {
            fail("bad vertex id '" + token + "'");
        }
        return id - 1;
    };
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ss(line);
        std::string tag;
        if (!(ss >> tag) || tag == "c") {
            continue;
        }
        if (tag == "p") {
            std::string kind;
            std::size_t m = 0;
            if (!(ss >> kind >> n >> m) || (kind != "edge" && kind != "col")) {
                fail("malformed problem line");
            }
            have_header = true;
            weights.assign(n, 1.0);
            continue;
        }
        if (!have_header) {
            fail("data before problem line");
        }
        std::string a, b;
        if (!(ss >> a >> b)) {
            fail("expected two fields");
        }
        if (tag == "e") {
            edges.emplace_back(vertex_id(a), vertex_id(b));
        } else if (tag == "w" || tag == "n") {
            weights[vertex_id(a)] = detail::parse_double(b);
        } else {
            fail("unknown line tag '" + tag + "'");
        }
    }
    if (!have_header) {
        throw std::invalid_argument("dimacs input has no problem line");
    }
    WeightedGraph g(std::move(weights));
    for (auto [a, b] : edges) {
        g.add_edge(a, b);
    }
    return g;
}

} // namespace cranidnc
