#pragma once

// Core value types shared by every module: digraphs, undirected multigraphs,
// bidirected double covers, arc sets and arc weight vectors tied to a host
// graph, plus exact rationals for flow parameters. All graphs are immutable
// after construction and identified by a structural digest, so sets and
// weight vectors can detect host mismatches cheaply.

#include <cstdint>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace djf {

using Weight = long long;

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Violated precondition on a library call (bad argument, host mismatch, ...).
struct precondition_error : error {
    using error::error;
};

// Malformed external input (text or JSON instance files).
struct parse_error : error {
    using error::error;
};

// A size guard refused to start or finish an exhaustive computation.
struct guard_error : error {
    using error::error;
};

inline void require(bool cond, const char* msg) {
    if (!cond) throw precondition_error(msg);
}

inline void require_guard(bool cond, const char* msg) {
    if (!cond) throw guard_error(msg);
}

inline constexpr int kMaxVertices = 1 << 20;
inline constexpr int kMaxArcs = 1 << 20;

inline std::uint64_t fnv64(const void* data, std::size_t len,
                           std::uint64_t seed = 1469598103934665603ULL) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = seed;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::uint64_t fnv64_ints(const std::vector<std::int64_t>& v,
                                std::uint64_t seed) {
    return v.empty() ? fnv64(nullptr, 0, seed)
                     : fnv64(v.data(), v.size() * sizeof(std::int64_t), seed);
}

// Exact rational, always reduced with positive denominator.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n, long long d = 1) : num(n), den(d) {
        require(den != 0, "rational with zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        if (num == 0) den = 1;
    }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator<(const Rational& a, const Rational& b) {
        return a.num * b.den < b.num * a.den;
    }
    friend bool operator<=(const Rational& a, const Rational& b) {
        return a.num * b.den <= b.num * a.den;
    }

    // floor(x / *this) for x >= 0 and *this > 0.
    long long floor_div_into(long long x) const {
        require(num > 0 && x >= 0, "floor_div_into needs positive rational");
        return (x * den) / num;
    }

    std::string str() const {
        return den == 1 ? std::to_string(num)
                        : std::to_string(num) + "/" + std::to_string(den);
    }
};

class Digraph {
  public:
    Digraph(int n, std::vector<std::pair<int, int>> arcs)
        : n_(n), arcs_(std::move(arcs)) {
        require(n_ >= 0 && n_ <= kMaxVertices, "vertex count out of range");
        require(static_cast<int>(arcs_.size()) <= kMaxArcs,
                "arc count out of range");
        for (auto& [t, h] : arcs_) {
            require(t >= 0 && t < n_ && h >= 0 && h < n_,
                    "arc endpoint out of range");
            require(t != h, "self-loop rejected");
        }
        digest_ = compute_digest();
    }

    int num_vertices() const { return n_; }
    int num_arcs() const { return static_cast<int>(arcs_.size()); }
    int tail(int a) const { return arcs_[a].first; }
    int head(int a) const { return arcs_[a].second; }
    const std::vector<std::pair<int, int>>& arcs() const { return arcs_; }
    std::uint64_t digest() const { return digest_; }

    Digraph reversed() const {
        std::vector<std::pair<int, int>> rev;
        rev.reserve(arcs_.size());
        for (auto& [t, h] : arcs_) rev.emplace_back(h, t);
        return Digraph(n_, std::move(rev));
    }

    friend bool operator==(const Digraph& a, const Digraph& b) {
        return a.n_ == b.n_ && a.arcs_ == b.arcs_;
    }

  private:
    std::uint64_t compute_digest() const {
        std::vector<std::int64_t> buf;
        buf.reserve(arcs_.size() * 2 + 2);
        buf.push_back(0x44);  // kind tag: digraph
        buf.push_back(n_);
        for (auto& [t, h] : arcs_) {
            buf.push_back(t);
            buf.push_back(h);
        }
        return fnv64_ints(buf, 1469598103934665603ULL);
    }

    int n_;
    std::vector<std::pair<int, int>> arcs_;
    std::uint64_t digest_;
};

// Undirected multigraph; endpoints stored lower-first so the canonical
// direction of every edge is fixed at construction.
class UndirGraph {
  public:
    UndirGraph(int n, std::vector<std::pair<int, int>> edges)
        : n_(n), edges_(std::move(edges)) {
        require(n_ >= 0 && n_ <= kMaxVertices, "vertex count out of range");
        require(static_cast<int>(edges_.size()) <= kMaxArcs,
                "edge count out of range");
        for (auto& [u, v] : edges_) {
            require(u >= 0 && u < n_ && v >= 0 && v < n_,
                    "edge endpoint out of range");
            require(u != v, "self-loop rejected");
            if (u > v) std::swap(u, v);
        }
        digest_ = compute_digest();
    }

    int num_vertices() const { return n_; }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    int lo(int e) const { return edges_[e].first; }
    int hi(int e) const { return edges_[e].second; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    std::uint64_t digest() const { return digest_; }

    friend bool operator==(const UndirGraph& a, const UndirGraph& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

  private:
    std::uint64_t compute_digest() const {
        std::vector<std::int64_t> buf;
        buf.reserve(edges_.size() * 2 + 2);
        buf.push_back(0x55);  // kind tag: undirected
        buf.push_back(n_);
        for (auto& [u, v] : edges_) {
            buf.push_back(u);
            buf.push_back(v);
        }
        return fnv64_ints(buf, 1469598103934665603ULL);
    }

    int n_;
    std::vector<std::pair<int, int>> edges_;
    std::uint64_t digest_;
};

// Double cover of an undirected graph: edge e becomes the arc pair
// plus_arc(e) = 2e running lo->hi and minus_arc(e) = 2e+1 running hi->lo.
// Exposed as a plain Digraph so every directed-graph routine applies.
class BidirectedGraph {
  public:
    explicit BidirectedGraph(UndirGraph base)
        : base_(std::move(base)), dig_(make_digraph(base_)) {}

    const UndirGraph& base() const { return base_; }
    const Digraph& as_digraph() const { return dig_; }
    int num_vertices() const { return base_.num_vertices(); }
    int num_edges() const { return base_.num_edges(); }
    int num_arcs() const { return dig_.num_arcs(); }
    std::uint64_t digest() const { return dig_.digest(); }

    static int plus_arc(int e) { return 2 * e; }
    static int minus_arc(int e) { return 2 * e + 1; }
    static int edge_of(int arc) { return arc / 2; }
    static bool is_plus(int arc) { return (arc & 1) == 0; }
    static int reverse(int arc) { return arc ^ 1; }

  private:
    static Digraph make_digraph(const UndirGraph& g) {
        std::vector<std::pair<int, int>> arcs;
        arcs.reserve(2 * g.num_edges());
        for (int e = 0; e < g.num_edges(); ++e) {
            arcs.emplace_back(g.lo(e), g.hi(e));
            arcs.emplace_back(g.hi(e), g.lo(e));
        }
        return Digraph(g.num_vertices(), std::move(arcs));
    }

    UndirGraph base_;
    Digraph dig_;
};

// Subset of the arcs of one host digraph, as a bitset.
class ArcSet {
  public:
    explicit ArcSet(const Digraph& host)
        : host_digest_(host.digest()), m_(host.num_arcs()),
          words_((m_ + 63) / 64, 0) {}
    explicit ArcSet(const BidirectedGraph& host)
        : ArcSet(host.as_digraph()) {}

    std::uint64_t host_digest() const { return host_digest_; }
    int universe_size() const { return m_; }

    bool test(int a) const {
        check_index(a);
        return (words_[a >> 6] >> (a & 63)) & 1;
    }
    void set(int a, bool value = true) {
        check_index(a);
        if (value)
            words_[a >> 6] |= 1ULL << (a & 63);
        else
            words_[a >> 6] &= ~(1ULL << (a & 63));
    }

    int count() const {
        int c = 0;
        for (auto w : words_) c += __builtin_popcountll(w);
        return c;
    }
    bool empty() const {
        for (auto w : words_)
            if (w) return false;
        return true;
    }

    std::vector<int> to_vector() const {
        std::vector<int> out;
        for (int a = 0; a < m_; ++a)
            if (test(a)) out.push_back(a);
        return out;
    }

    ArcSet& operator|=(const ArcSet& o) {
        check_host(o);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    ArcSet& operator&=(const ArcSet& o) {
        check_host(o);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }
    ArcSet& operator-=(const ArcSet& o) {
        check_host(o);
        for (std::size_t i = 0; i < words_.size(); ++i)
            words_[i] &= ~o.words_[i];
        return *this;
    }
    bool intersects(const ArcSet& o) const {
        check_host(o);
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }

    friend bool operator==(const ArcSet& a, const ArcSet& b) {
        return a.host_digest_ == b.host_digest_ && a.words_ == b.words_;
    }

  private:
    void check_index(int a) const {
        require(a >= 0 && a < m_, "arc id out of range for host");
    }
    void check_host(const ArcSet& o) const {
        require(host_digest_ == o.host_digest_,
                "arc sets belong to different hosts");
    }

    std::uint64_t host_digest_;
    int m_;
    std::vector<std::uint64_t> words_;
};

// Nonnegative integer weight per arc of one host digraph.
class ArcWeightVector {
  public:
    ArcWeightVector(const Digraph& host, std::vector<Weight> w)
        : host_digest_(host.digest()), w_(std::move(w)) {
        require(static_cast<int>(w_.size()) == host.num_arcs(),
                "weight vector length mismatch");
        for (Weight x : w_) {
            require(x >= 0, "negative arc weight");
            require(x <= std::numeric_limits<std::int32_t>::max(),
                    "arc weight exceeds 32-bit range");
        }
    }
    ArcWeightVector(const BidirectedGraph& host, std::vector<Weight> w)
        : ArcWeightVector(host.as_digraph(), std::move(w)) {}

    static ArcWeightVector ones(const Digraph& host) {
        return ArcWeightVector(host,
                               std::vector<Weight>(host.num_arcs(), 1));
    }

    std::uint64_t host_digest() const { return host_digest_; }
    int size() const { return static_cast<int>(w_.size()); }
    Weight operator[](int a) const { return w_[a]; }
    const std::vector<Weight>& values() const { return w_; }

    Weight total() const {
        Weight s = 0;
        for (Weight x : w_) s += x;
        return s;
    }

    void check_host(std::uint64_t digest) const {
        require(host_digest_ == digest, "weight vector host mismatch");
    }

    friend bool operator==(const ArcWeightVector& a, const ArcWeightVector& b) {
        return a.host_digest_ == b.host_digest_ && a.w_ == b.w_;
    }

  private:
    std::uint64_t host_digest_;
    std::vector<Weight> w_;
};

// Orientation of a bidirected host (one arc per edge) plus integer values
// and bounds p <= q. The host rides along so an assignment can be verified
// or serialized on its own. Construction checks shape only; conservation and
// bound violations are diagnosed by verify_flow so broken assignments can
// still be represented and reported.
struct FlowAssignment {
    BidirectedGraph host;
    ArcSet orientation;   // exactly one of {2e, 2e+1} per edge
    std::vector<Weight> values;  // per edge
    Weight p = 1;
    Weight q = 1;

    FlowAssignment(BidirectedGraph host_, ArcSet orient,
                   std::vector<Weight> vals, Weight p_, Weight q_)
        : host(std::move(host_)), orientation(std::move(orient)),
          values(std::move(vals)), p(p_), q(q_) {
        require(orientation.host_digest() == host.digest(),
                "orientation host mismatch");
        require(static_cast<int>(values.size()) == host.num_edges(),
                "one value per edge required");
        require(p >= 1 && q >= p, "flow bounds must satisfy 1 <= p <= q");
        for (int e = 0; e < host.num_edges(); ++e)
            require(orientation.test(2 * e) != orientation.test(2 * e + 1),
                    "orientation must pick exactly one direction per edge");
    }

    // k = 1 + q/p.
    Rational k() const { return Rational(p + q, p); }

    // Arc of the host double cover carrying edge e under this orientation.
    int arc_of(int e) const {
        return orientation.test(2 * e) ? 2 * e : 2 * e + 1;
    }
};

// Mixed graph: directed arcs plus undirected edges over one vertex set.
// Member ids are global: arcs are 0..|A|-1, edges |A|..|A|+|E|-1.
class MixedGraph {
  public:
    MixedGraph(int n, std::vector<std::pair<int, int>> arcs,
               std::vector<std::pair<int, int>> edges)
        : n_(n), arcs_(std::move(arcs)), edges_(std::move(edges)) {
        require(n_ >= 0 && n_ <= kMaxVertices, "vertex count out of range");
        require(static_cast<int>(arcs_.size() + edges_.size()) <= kMaxArcs,
                "member count out of range");
        for (auto& [t, h] : arcs_) {
            require(t >= 0 && t < n_ && h >= 0 && h < n_,
                    "arc endpoint out of range");
            require(t != h, "self-loop rejected");
        }
        for (auto& [u, v] : edges_) {
            require(u >= 0 && u < n_ && v >= 0 && v < n_,
                    "edge endpoint out of range");
            require(u != v, "self-loop rejected");
            if (u > v) std::swap(u, v);
        }
    }

    int num_vertices() const { return n_; }
    int num_arcs() const { return static_cast<int>(arcs_.size()); }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    const std::vector<std::pair<int, int>>& arcs() const { return arcs_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    int edge_id(int e) const { return num_arcs() + e; }

  private:
    int n_;
    std::vector<std::pair<int, int>> arcs_;
    std::vector<std::pair<int, int>> edges_;
};

// Guard limits, overridable through the environment (DJF_ prefix).
inline long long env_limit(const char* name, long long dflt) {
    const char* s = std::getenv(name);
    if (!s || !*s) return dflt;
    char* end = nullptr;
    long long v = std::strtoll(s, &end, 10);
    if (end == s || *end != '\0' || v <= 0) return dflt;
    return v;
}

struct Guards {
    // Exhaustive dicut enumeration: max vertex count.
    static long long enum_max_n() { return env_limit("DJF_ENUM_MAX_N", 24); }
    // Exhaustive cut scans (oracle mode): max vertex count.
    static long long oracle_max_n() { return env_limit("DJF_ORACLE_MAX_N", 20); }
    // Orientation searches: max edge count.
    static long long search_max_edges() {
        return env_limit("DJF_SEARCH_MAX_EDGES", 24);
    }
    // Decomposition searches: max enumeration space for a proven-absent claim.
    static long long decomp_max_space() {
        return env_limit("DJF_DECOMP_MAX_SPACE", 1LL << 26);
    }
};

}  // namespace djf
