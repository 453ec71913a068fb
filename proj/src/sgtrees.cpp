#include "sgtree/sgtrees.hpp"

#include <algorithm>
#include <functional>

#include "sgtree/errors.hpp"

namespace sgt {

LogConcavity is_log_concave(const std::vector<Rational>& x) {
    const int n = static_cast<int>(x.size());
    int first = -1, last = -1;
    for (int i = 0; i < n; ++i)
        if (x[static_cast<std::size_t>(i)] != 0) {
            if (first < 0) first = i;
            last = i;
        }
    for (int i = 0; i < n; ++i)
        if (x[static_cast<std::size_t>(i)] < 0) return {false, i, "negative entry"};
    for (int i = first + 1; first >= 0 && i < last; ++i)
        if (x[static_cast<std::size_t>(i)] == 0) return {false, i, "internal zero"};
    for (int i = 1; i + 1 < n; ++i) {
        const auto& a = x[static_cast<std::size_t>(i - 1)];
        const auto& m = x[static_cast<std::size_t>(i)];
        const auto& c = x[static_cast<std::size_t>(i + 1)];
        if (m * m < a * c) return {false, i, "square below neighbour product"};
    }
    return {};
}

CheckReport check_toeplitz_tp2(const std::vector<Rational>& x, int window) {
    auto at = [&](int i) -> Rational {
        if (i < 0 || i >= static_cast<int>(x.size())) return 0;
        return x[static_cast<std::size_t>(i)];
    };
    CheckReport rep;
    for (int i = 0; i < window; ++i)
        for (int i2 = i + 1; i2 < window; ++i2)
            for (int j = 0; j < window; ++j)
                for (int j2 = j + 1; j2 < window; ++j2)
                    rep.check_le(at(i - j2) * at(i2 - j), at(i - j) * at(i2 - j2),
                                 "i=" + std::to_string(i) + " i'=" + std::to_string(i2) + " j=" +
                                     std::to_string(j) + " j'=" + std::to_string(j2));
    return rep;
}

std::vector<Rational> tilt(const std::vector<Rational>& w, const Rational& alpha, const Rational& beta) {
    if (alpha <= 0 || beta <= 0) throw DomainError("tilt parameters must be positive");
    std::vector<Rational> out;
    Rational pw = alpha;
    for (const auto& x : w) {
        out.push_back(pw * x);
        pw *= beta;
    }
    return out;
}

std::vector<Rational> progression(const std::vector<Rational>& w, int d) {
    std::vector<Rational> out;
    for (std::size_t i = 0; i < w.size(); i += static_cast<std::size_t>(d)) out.push_back(w[i]);
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

void validate_weights(const std::vector<Rational>& w, int d) {
    if (d < 1) throw DomainError("d must be positive");
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] < 0) throw DomainError("negative weight at index " + std::to_string(i));
        if (i % static_cast<std::size_t>(d) != 0 && w[i] != 0)
            throw DomainError("weight at index " + std::to_string(i) + " must vanish for d=" + std::to_string(d));
    }
    const std::size_t du = static_cast<std::size_t>(d);
    if (w.size() <= du || w[0] == 0 || w[du] == 0)
        throw DomainError("need w_0 > 0 and w_" + std::to_string(d) + " > 0");
    const auto W = progression(w, d);
    for (std::size_t j = 0; j < W.size(); ++j)
        if (W[j] == 0) throw DomainError("internal zero at index " + std::to_string(j * du));
}

const Rational& PartitionTables::b_at(int n) const {
    if (n < 1 || n > N) throw DomainError("b_" + std::to_string(n) + " outside the table horizon");
    return b[static_cast<std::size_t>(n)];
}

Rational PartitionTables::w_at(int i) const {
    if (i < 0 || i >= static_cast<int>(w.size())) return 0;
    return w[static_cast<std::size_t>(i)];
}

WeightPair PartitionTables::pair() const {
    WeightPair wp;
    wp.a = w;
    wp.b = b;
    return wp;
}

namespace {

using Grid = std::vector<std::vector<Rational>>;

void direct_tables(PartitionTables& t) {
    const int N = t.N;
    const auto NU = static_cast<std::size_t>(N);
    t.b.assign(NU + 1, Rational(0));
    t.f.assign(NU, std::vector<Rational>(NU, Rational(0)));
    t.f[0][0] = 1;
    t.b[1] = t.w_at(0);
    for (int n = 1; n < N; ++n) {
        auto& row = t.f[static_cast<std::size_t>(n)];
        const auto& prev = t.f[static_cast<std::size_t>(n - 1)];
        row[1] = t.b[static_cast<std::size_t>(n)];
        for (int k = 2; k <= n; ++k) {
            Rational acc = 0;
            for (int i = 0; k + i - 1 <= n - 1; ++i) {
                const auto& fv = prev[static_cast<std::size_t>(k + i - 1)];
                if (fv != 0) acc += t.w_at(i) * fv;
            }
            row[static_cast<std::size_t>(k)] = acc;
        }
        Rational bn = 0;
        for (int i = 1; i <= n; ++i)
            if (row[static_cast<std::size_t>(i)] != 0) bn += t.w_at(i) * row[static_cast<std::size_t>(i)];
        t.b[static_cast<std::size_t>(n + 1)] = bn;
    }
}

Grid z_from_f(const PartitionTables& t, int levels) {
    const int H = t.N - 1;
    Grid z(static_cast<std::size_t>(levels), std::vector<Rational>(static_cast<std::size_t>(H) + 1));
    for (int l = 0; l < levels; ++l)
        for (int m = 0; m <= H; ++m) {
            Rational acc = 0;
            for (int k = 0; k <= m; ++k) {
                const auto& fv = t.f[static_cast<std::size_t>(m)][static_cast<std::size_t>(k)];
                if (fv != 0) acc += t.w_at(k + l) * fv;
            }
            z[static_cast<std::size_t>(l)][static_cast<std::size_t>(m)] = acc;
        }
    return z;
}

// Largest n with n*d + s <= N - 1, or -1.
int top_row(int N, int d, int s) { return N - 1 - s < 0 ? -1 : (N - 1 - s) / d; }

void arithmetic_tables(PartitionTables& t) {
    const int N = t.N, d = t.d;
    const auto du = static_cast<std::size_t>(d);
    const std::size_t cols = static_cast<std::size_t>(N) + 2;
    t.F.assign(du, Grid{});
    for (int s = 0; s < d; ++s)
        t.F[static_cast<std::size_t>(s)].assign(static_cast<std::size_t>(top_row(N, d, s) + 1),
                                                std::vector<Rational>(cols, Rational(0)));
    auto Fget = [&](int s, int n, int k) -> Rational {
        const auto& A = t.F[static_cast<std::size_t>(s)];
        if (n < 0 || k < 0 || n >= static_cast<int>(A.size()) || k >= static_cast<int>(cols)) return 0;
        return A[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
    };
    const int nmax = top_row(N, d, 0);
    for (int n = 0; n <= nmax; ++n) {
        auto& row0 = t.F[0][static_cast<std::size_t>(n)];
        if (n == 0) {
            row0[0] = 1;
        } else {
            for (std::size_t k = 1; k < cols; ++k) {
                Rational acc = 0;
                for (int j = 0; static_cast<std::size_t>(j) + k - 1 < cols; ++j) {
                    Rational fv = Fget(d - 1, n - 1, static_cast<int>(k) + j - 1);
                    if (fv != 0) acc += t.W_at(j) * fv;
                }
                row0[k] = acc;
            }
        }
        for (int s = 1; s < d && n <= top_row(N, d, s); ++s) {
            auto& row = t.F[static_cast<std::size_t>(s)][static_cast<std::size_t>(n)];
            for (std::size_t k = 0; k < cols; ++k) {
                Rational acc = 0;
                for (int j = 0; static_cast<std::size_t>(j) + k < cols; ++j) {
                    Rational fv = Fget(s - 1, n, static_cast<int>(k) + j);
                    if (fv != 0) acc += t.W_at(j) * fv;
                }
                row[k] = acc;
            }
        }
    }
    t.b.assign(static_cast<std::size_t>(N) + 1, Rational(0));
    for (int n = 0; n * d + 1 <= N; ++n) {
        Rational acc = 0;
        for (int i = 0; i <= n; ++i) acc += t.W_at(i) * Fget(0, n, i);
        t.b[static_cast<std::size_t>(n * d + 1)] = acc;
    }
    const auto NU = static_cast<std::size_t>(N);
    t.f.assign(NU, std::vector<Rational>(NU, Rational(0)));
    for (int m = 0; m < N; ++m) {
        const int s = m % d;
        for (int k = s; k <= m; k += d)
            t.f[static_cast<std::size_t>(m)][static_cast<std::size_t>(k)] = Fget(s, m / d, (k - s) / d);
    }
}

Grid z_from_F(const PartitionTables& t, int levels) {
    const int H = t.N - 1, d = t.d;
    Grid z(static_cast<std::size_t>(levels), std::vector<Rational>(static_cast<std::size_t>(H) + 1));
    auto Fget = [&](int s, int n, int k) -> Rational {
        const auto& A = t.F[static_cast<std::size_t>(s)];
        if (n < 0 || k < 0 || n >= static_cast<int>(A.size()) || k >= static_cast<int>(A[0].size())) return 0;
        return A[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
    };
    for (int l = 0; l < levels; ++l) {
        const int q = l / d, s = l % d;
        for (int m = 0; m <= H; ++m) {
            if ((m + l) % d != 0) continue;
            Rational acc = 0;
            if (s != 0) {
                const int n = (m - (d - s)) / d;
                for (int i = 0; i <= n; ++i) acc += t.W_at(i + q + 1) * Fget(d - s, n, i);
            } else if (m == 0) {
                acc = t.W_at(q);
            } else {
                const int n1 = m / d;
                for (int i = 0; i <= n1; ++i) acc += t.W_at(i + q) * Fget(0, n1, i);
            }
            z[static_cast<std::size_t>(l)][static_cast<std::size_t>(m)] = acc;
        }
    }
    return z;
}

}  // namespace

PartitionTables compute_tables(const std::vector<Rational>& w, int d, int N) {
    return compute_tables(w, d, N, d == 1 ? TablePath::Direct : TablePath::Arithmetic);
}

PartitionTables compute_tables(const std::vector<Rational>& w_in, int d, int N, TablePath path) {
    const auto w = canonical(w_in);
    validate_weights(w, d);
    if (N < 1) throw DomainError("horizon must be at least 1");
    if (path == TablePath::Direct && d != 1) throw DomainError("the direct recursion needs d = 1");
    PartitionTables t;
    t.w = w;
    t.d = d;
    t.N = N;
    t.path = path;
    const int levels = std::max(N + 1, support_top(w) + 1);
    if (path == TablePath::Direct) {
        direct_tables(t);
        t.z = ShiftedZ(z_from_f(t, levels));
    } else {
        arithmetic_tables(t);
        t.z = ShiftedZ(z_from_F(t, levels));
    }
    return t;
}

CheckReport check_table_identities(const PartitionTables& t) {
    CheckReport rep;
    const int H = t.N - 1;
    for (int n = 0; n + 1 <= t.N && n <= H; ++n)
        rep.check_eq(t.b_at(n + 1), t.z(0, n), "b_" + std::to_string(n + 1) + " = Z_" + std::to_string(n));
    const auto wp = t.pair();
    const auto f2 = ShiftedZ::composition_sums(wp, H);
    for (int n = 0; n <= H; ++n)
        for (int k = 0; k <= H; ++k)
            rep.check_eq(t.f[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)],
                         f2[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)],
                         "f_" + std::to_string(n) + "," + std::to_string(k) + " vs composition sum");
    const ShiftedZ z2(wp, H);
    for (int l = 0; l < std::min(z2.levels(), t.z.levels()); ++l)
        for (int n = 0; n <= H; ++n)
            rep.check_eq(t.z(l, n), z2(l, n), "Z level " + std::to_string(l) + " n=" + std::to_string(n));
    if (t.path != TablePath::Arithmetic) return rep;

    const int d = t.d;
    const auto W = progression(t.w, d);
    std::vector<Rational> conv{1};
    for (int i = 0; i < d; ++i) {
        std::vector<Rational> next(conv.size() + W.size() - 1, Rational(0));
        for (std::size_t a = 0; a < conv.size(); ++a)
            for (std::size_t b = 0; b < W.size(); ++b) next[a + b] += conv[a] * W[b];
        conv = std::move(next);
    }
    auto Fget = [&](int s, int n, int k) -> Rational {
        const auto& A = t.F[static_cast<std::size_t>(s)];
        if (n < 0 || k < 0 || n >= static_cast<int>(A.size()) || k >= static_cast<int>(A[0].size())) return 0;
        return A[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
    };
    for (int s = 0; s < d; ++s) {
        const auto& A = t.F[static_cast<std::size_t>(s)];
        for (int n = 1; n < static_cast<int>(A.size()); ++n)
            for (int k = 1; k < static_cast<int>(A[0].size()); ++k) {
                Rational acc = 0;
                for (int j = 0; j < static_cast<int>(conv.size()); ++j)
                    acc += conv[static_cast<std::size_t>(j)] * Fget(s, n - 1, k + j - 1);
                rep.check_eq(Fget(s, n, k), acc,
                             "W*d recursion s=" + std::to_string(s) + " n=" + std::to_string(n) + " k=" +
                                 std::to_string(k));
            }
    }
    const int r = support_top(t.w) / d;
    for (int n = 1;; ++n) {
        bool any = false;
        for (int s = 0; s < d; ++s) {
            const int m = n * d + d - s;
            const int l = (r - 1) * d + s;
            if (m > H) continue;
            any = true;
            Rational acc = 0;
            for (int i = 0; i <= n + 1; ++i) acc += t.W_at(i) * Fget(d - s - 1, n, i);
            rep.check_eq(t.z(l, m), t.W_at(r) * acc,
                         "top-shift edge n=" + std::to_string(n) + " s=" + std::to_string(s));
        }
        if (!any) break;
    }
    return rep;
}

Rational tree_weight(const PlaneTree& t, const std::vector<Rational>& w) {
    Rational out = 1;
    for (const auto& u : t.words()) {
        const auto k = static_cast<std::size_t>(children_count(t, u));
        if (k >= w.size()) return 0;
        out *= w[k];
        if (out == 0) return 0;
    }
    return out;
}

std::map<PlaneTree, Rational> sg_distribution(const std::vector<Rational>& w, int d, int n) {
    validate_weights(w, d);
    if (n < 1 || (n - 1) % d != 0)
        throw DomainError("no tree of size " + std::to_string(n) + " has positive mass for d=" + std::to_string(d));
    const auto t = compute_tables(w, d, n);
    std::map<int, std::map<PlaneTree, Rational>> memo;
    std::function<const std::map<PlaneTree, Rational>&(int)> law = [&](int m) -> const std::map<PlaneTree, Rational>& {
        auto it = memo.find(m);
        if (it != memo.end()) return it->second;
        std::map<PlaneTree, Rational> out;
        if (m == 1) {
            out[PlaneTree()] = 1;
            return memo[m] = out;
        }
        std::vector<int> parts;
        std::function<void(int)> comps = [&](int left) {
            if (left == 0) {
                const int k = static_cast<int>(parts.size());
                if (k % d != 0 || t.w_at(k) == 0) return;
                Rational base = t.w_at(k) / t.b_at(m);
                for (int p : parts) base *= t.b_at(p);
                std::vector<PlaneTree> pick(parts.size());
                std::function<void(std::size_t, const Rational&)> prod = [&](std::size_t j, const Rational& mass) {
                    if (j == parts.size()) {
                        out[compose_root(pick)] += mass;
                        return;
                    }
                    for (const auto& [s, p] : law(parts[j])) {
                        pick[j] = s;
                        prod(j + 1, mass * p);
                    }
                };
                prod(0, base);
                return;
            }
            for (int p = 1; p <= left; p += d) {
                parts.push_back(p);
                comps(left - p);
                parts.pop_back();
            }
        };
        comps(m - 1);
        return memo[m] = std::move(out);
    };
    auto out = law(n);
    Rational total = 0;
    for (const auto& [tr, p] : out) total += p;
    if (total != 1) throw std::logic_error("tree law does not sum to 1");
    return out;
}

CheckReport check_tp2_array(const PartitionTables& t, int N) {
    CheckReport rep;
    auto scan = [&](const std::vector<std::vector<Rational>>& A, int lo, const std::string& tag) {
        const int rows = std::min(static_cast<int>(A.size()) - 1, N);
        const int cols = std::min(static_cast<int>(A.empty() ? 0 : A[0].size()) - 1, N);
        for (int n = lo; n <= rows; ++n)
            for (int n2 = n + 1; n2 <= rows; ++n2)
                for (int k = lo; k <= cols; ++k)
                    for (int k2 = k + 1; k2 <= cols; ++k2) {
                        const auto& a = A[static_cast<std::size_t>(n)];
                        const auto& c = A[static_cast<std::size_t>(n2)];
                        rep.check_le(a[static_cast<std::size_t>(k2)] * c[static_cast<std::size_t>(k)],
                                     a[static_cast<std::size_t>(k)] * c[static_cast<std::size_t>(k2)],
                                     tag + " n=" + std::to_string(n) + " n'=" + std::to_string(n2) + " k=" +
                                         std::to_string(k) + " k'=" + std::to_string(k2));
                    }
    };
    if (t.d == 1) {
        scan(t.f, 1, "f");
    } else {
        for (int s = 0; s < t.d; ++s) scan(t.F[static_cast<std::size_t>(s)], 0, "F^" + std::to_string(s));
    }
    return rep;
}

int ratio_chain_horizon(int d, int N) { return (N + 1) * d + 1; }

CheckReport check_ratio_chain(const PartitionTables& t, int N) {
    if (t.N < ratio_chain_horizon(t.d, N))
        throw DomainError("tables too small for the ratio chain up to n=" + std::to_string(N));
    CheckReport rep;
    const int d = t.d;
    const int r = support_top(t.w) / d;
    for (int n = 0; n <= N; ++n) {
        struct Entry {
            int q, s;
            Rational v;
        };
        std::vector<Entry> chain;
        const int smax = n == 0 ? 0 : d - 1;
        for (int s = 0; s <= smax; ++s)
            for (int q = 0; q < r; ++q) {
                const int l = q * d + s;
                const Rational& num = t.z(l, n * d + d - s);
                const Rational& den = t.z(l, (n - 1) * d + d - s);
                const std::string tag = "n=" + std::to_string(n) + " (q,s)=(" + std::to_string(q) + "," +
                                        std::to_string(s) + ")";
                if (den == 0) {
                    rep.failures.push_back({tag + " undefined ratio", num, den});
                    continue;
                }
                chain.push_back({q, s, num / den});
            }
        for (std::size_t i = 1; i < chain.size(); ++i)
            rep.check_le(chain[i].v, chain[i - 1].v,
                         "n=" + std::to_string(n) + " (" + std::to_string(chain[i].q) + "," +
                             std::to_string(chain[i].s) + ") after (" + std::to_string(chain[i - 1].q) + "," +
                             std::to_string(chain[i - 1].s) + ")");
        if (chain.empty()) continue;
        rep.check_eq(chain.front().v, t.b_at((n + 1) * d + 1) / t.b_at(n * d + 1),
                     "n=" + std::to_string(n) + " first endpoint");
        if (n >= 1)
            rep.check_eq(chain.back().v, t.b_at(n * d + 1) / t.b_at((n - 1) * d + 1),
                         "n=" + std::to_string(n) + " last endpoint");
    }
    return rep;
}

GrowthModel::GrowthModel(std::vector<Rational> w, int d, int N) : GrowthModel(compute_tables(w, d, N)) {}

GrowthModel::GrowthModel(PartitionTables tables)
    : t_(std::move(tables)), cc_(t_.pair(), t_.d, t_.z) {}

std::map<PlaneTree, Rational> GrowthModel::kernel_row(const PlaneTree& t) const {
    const int d = t_.d;
    if (static_cast<int>(t.size()) + d > t_.N) throw DomainError("kernel row beyond the table horizon");
    if (tree_weight(t, t_.w) == 0) throw DomainError("tree " + format_tree(t) + " has zero weight");
    std::function<std::map<PlaneTree, Rational>(const PlaneTree&)> row = [&](const PlaneTree& tr) {
        std::map<PlaneTree, Rational> out;
        const auto dec = decompose_root(tr);
        int n = static_cast<int>(tr.size()) - 1;
        int level = 0;
        Rational rest = 1;
        for (std::size_t p = 0; p < dec.sizes.size(); ++p, ++level) {
            const Rational& up = cc_.q(level, n, dec.sizes[p]);
            if (up != 0) {
                auto subs = dec.subtrees;
                for (const auto& [grown, pr] : row(dec.subtrees[p])) {
                    subs[p] = grown;
                    out[compose_root(subs)] += rest * up * pr;
                }
            }
            rest *= 1 - up;
            if (rest == 0) return out;
            n -= dec.sizes[p];
        }
        cc_.check_append(level);
        WordSet words = tr.words();
        const int k = static_cast<int>(dec.sizes.size());
        for (int j = 1; j <= d; ++j) words.insert(Word{k + j});
        auto [it, fresh] = out.emplace(PlaneTree::unchecked(std::move(words)), Rational(0));
        it->second += rest;
        return out;
    };
    return row(t);
}

std::map<PlaneTree, Rational> growth_kernel_row(const std::vector<Rational>& w, int d, const PlaneTree& t) {
    return GrowthModel(w, d, static_cast<int>(t.size()) + d).kernel_row(t);
}

void require_log_concave(const std::vector<Rational>& w, int d) {
    validate_weights(w, d);
    const auto lc = is_log_concave(progression(w, d));
    if (!lc.ok)
        throw Refused("weight progression is not log-concave at index " + std::to_string(lc.witness) + " (" +
                          lc.reason + ")",
                      lc.witness);
}

GrowthChain::GrowthChain(std::shared_ptr<const GrowthModel> model, std::uint64_t key)
    : model_(std::move(model)), rng_(key) {
    reset(key);
}

int GrowthChain::new_node(int parent, int pos) {
    const std::uint64_t h = parent < 0 ? kRootHash : extend_hash(nodes_[static_cast<std::size_t>(parent)].hash, pos);
    if (used_ == nodes_.size()) nodes_.emplace_back();
    Node& x = nodes_[used_];
    x.size = 1;
    x.parent = parent;
    x.pos = pos;
    x.hash = h;
    x.kids.clear();
    return static_cast<int>(used_++);
}

void GrowthChain::reset(std::uint64_t key) {
    used_ = 0;
    new_node(-1, 0);
    rng_ = CounterRng(key);
    last_parent_ = -1;
}

int GrowthChain::step() {
    const auto& cc = model_->coupling();
    const int d = cc.d();
    if (size() + d > model_->horizon()) throw DomainError("chain would pass the model horizon");
    int v = 0;
    int level = 0;
    for (;;) {
        const Node& nv = nodes_[static_cast<std::size_t>(v)];
        int n = nv.size - 1;
        level = 0;
        int chosen = -1;
        for (int c : nv.kids) {
            const int m = nodes_[static_cast<std::size_t>(c)].size;
            if (cc.bernoulli(level, n, m).sample(rng_) == 0) {
                chosen = c;
                break;
            }
            n -= m;
            ++level;
        }
        if (chosen < 0) break;
        v = chosen;
    }
    cc.check_append(level);
    const int k = static_cast<int>(nodes_[static_cast<std::size_t>(v)].kids.size());
    for (int j = 1; j <= d; ++j) {
        const int id = new_node(v, k + j);
        nodes_[static_cast<std::size_t>(v)].kids.push_back(id);
    }
    last_parent_ = v;
    last_k_ = k;
    for (int u = v; u >= 0; u = nodes_[static_cast<std::size_t>(u)].parent)
        nodes_[static_cast<std::size_t>(u)].size += d;
    return v;
}

std::vector<Word> GrowthChain::last_added() const {
    if (last_parent_ < 0) return {Word{}};
    const Word base = word_of(last_parent_);
    std::vector<Word> out;
    for (int j = 1; j <= model_->d(); ++j) out.push_back(child_of(base, last_k_ + j));
    return out;
}

Word GrowthChain::word_of(int id) const {
    Word out;
    for (int u = id; nodes_[static_cast<std::size_t>(u)].parent >= 0; u = nodes_[static_cast<std::size_t>(u)].parent)
        out.push_back(nodes_[static_cast<std::size_t>(u)].pos);
    std::reverse(out.begin(), out.end());
    return out;
}

PlaneTree GrowthChain::tree() const {
    WordSet words;
    Word cur;
    std::function<void(int)> rec = [&](int v) {
        words.insert(cur);
        for (int c : nodes_[static_cast<std::size_t>(v)].kids) {
            cur.push_back(nodes_[static_cast<std::size_t>(c)].pos);
            rec(c);
            cur.pop_back();
        }
    };
    rec(0);
    return PlaneTree::unchecked(std::move(words));
}

std::uint64_t GrowthChain::shape_code() const {
    if (size() > 31) throw DomainError("shape code needs at most 31 vertices");
    std::uint64_t code = 1;
    std::function<void(int)> rec = [&](int v) {
        code = (code << 1) | 1U;
        for (int c : nodes_[static_cast<std::size_t>(v)].kids) rec(c);
        code <<= 1;
    };
    rec(0);
    return code;
}

std::vector<GrowthStep> grow_chain(const std::vector<Rational>& w, int d, int N, std::uint64_t seed) {
    require_log_concave(w, d);
    auto model = std::make_shared<const GrowthModel>(w, d, N);
    GrowthChain chain(model, CounterRng::derive(seed, "sg-chain"));
    std::vector<GrowthStep> out{{1, {Word{}}, chain.tree()}};
    while (chain.size() + d <= N) {
        chain.step();
        out.push_back({chain.size(), chain.last_added(), chain.tree()});
    }
    return out;
}

}  // namespace sgt
