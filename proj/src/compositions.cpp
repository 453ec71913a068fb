#include "sgtree/compositions.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "sgtree/errors.hpp"

namespace sgt {

Rational WeightPair::a_at(int i) const {
    if (i < 0 || i >= static_cast<int>(a.size())) return 0;
    return a[static_cast<std::size_t>(i)];
}

const Rational& WeightPair::b_at(int m) const {
    if (m < 1 || m > b_horizon())
        throw DomainError("b_" + std::to_string(m) + " is outside the declared horizon " +
                          std::to_string(b_horizon()));
    return b[static_cast<std::size_t>(m)];
}

WeightPair WeightPair::make(std::vector<Rational> a, const std::vector<Rational>& b_from_one) {
    WeightPair wp;
    wp.a = canonical(std::move(a));
    wp.b.push_back(0);
    wp.b.insert(wp.b.end(), b_from_one.begin(), b_from_one.end());
    for (auto& x : wp.b) x.canonicalize();
    return wp;
}

std::string format_composition(const Composition& c) {
    if (c.empty()) return "-";
    std::string out;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(c[i]);
    }
    return out;
}

Composition parse_composition(std::string_view text) {
    std::string s(text);
    std::istringstream in(s);
    std::string tok;
    Composition c;
    bool dash = false;
    while (in >> tok) {
        if (tok == "-") {
            dash = true;
            continue;
        }
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(tok, &used);
        } catch (const std::exception&) {
            throw ParseError("bad composition part '" + tok + "'");
        }
        if (used != tok.size() || v < 1) throw ParseError("bad composition part '" + tok + "'");
        c.push_back(v);
    }
    if (dash && !c.empty()) throw ParseError("'-' only denotes the empty composition");
    return c;
}

int total(const Composition& c) {
    int s = 0;
    for (int x : c) s += x;
    return s;
}

std::set<Composition> covering_successors(const Composition& c, int d) {
    std::set<Composition> out;
    for (std::size_t j = 0; j < c.size(); ++j) {
        Composition c2 = c;
        c2[j] += d;
        out.insert(std::move(c2));
    }
    Composition c2 = c;
    c2.insert(c2.end(), static_cast<std::size_t>(d), 1);
    out.insert(std::move(c2));
    return out;
}

bool satisfies_arith(const Composition& c, ArithClass cls) {
    if (static_cast<int>(c.size()) % cls.d != cls.s) return false;
    for (int x : c)
        if ((x - 1) % cls.d != 0) return false;
    return true;
}

bool precedes(const Composition& c, const Composition& c2, int d) {
    if (c.empty()) return satisfies_arith(c2, {d, 0});
    if (c2.empty()) return false;
    if (c2[0] < c[0] || (c2[0] - c[0]) % d != 0) return false;
    return precedes(Composition(c.begin() + 1, c.end()), Composition(c2.begin() + 1, c2.end()), d);
}

int support_top(const std::vector<Rational>& a) {
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
        if (a[static_cast<std::size_t>(i)] != 0) return i;
    return -1;
}

namespace {

bool b_positive_on(const WeightPair& wp, int d) {
    for (int m = 1; m <= wp.b_horizon(); ++m) {
        const Rational& v = wp.b[static_cast<std::size_t>(m)];
        if (v < 0) return false;
        if ((m - 1) % d == 0 ? v == 0 : v != 0) return false;
    }
    return true;
}

}  // namespace

bool is_non_degenerate(const WeightPair& wp) {
    for (const auto& x : wp.a)
        if (x < 0) return false;
    const int r = support_top(wp.a);
    if (r < 1) return false;
    for (int i = 0; i <= r; ++i)
        if (wp.a_at(i) == 0) return false;
    return b_positive_on(wp, 1);
}

bool is_arith_non_degenerate(const WeightPair& wp, ArithClass cls) {
    if (cls.d < 1 || cls.s < 0 || cls.s >= cls.d) return false;
    if (cls.d == 1) return is_non_degenerate(wp);
    for (const auto& x : wp.a)
        if (x < 0) return false;
    const int top = support_top(wp.a);
    if (top < cls.s || (top - cls.s) % cls.d != 0) return false;
    const int r = (top - cls.s) / cls.d;
    if (cls.s == 0 && r < 1) return false;
    for (int i = 0; i <= top; ++i) {
        const bool on = i >= cls.s && (i - cls.s) % cls.d == 0;
        if (on != (wp.a_at(i) != 0)) return false;
    }
    return b_positive_on(wp, cls.d);
}

WeightPair shift(const WeightPair& wp, int ell, ArithClass cls) {
    if (ell < 0) throw DomainError("negative shift");
    WeightPair out;
    out.b = wp.b;
    for (std::size_t i = static_cast<std::size_t>(ell); i < wp.a.size(); ++i) out.a.push_back(wp.a[i]);
    const int s2 = ((cls.s - ell) % cls.d + cls.d) % cls.d;
    const bool ok = cls.d == 1 ? is_non_degenerate(out) : is_arith_non_degenerate(out, {cls.d, s2});
    if (!ok) throw DomainError("shift by " + std::to_string(ell) + " gives a degenerate weight pair");
    return out;
}

std::vector<std::vector<Rational>> ShiftedZ::composition_sums(const WeightPair& wp, int horizon) {
    const auto H = static_cast<std::size_t>(horizon);
    std::vector<std::vector<Rational>> f(H + 1, std::vector<Rational>(H + 1));
    f[0][0] = 1;
    for (int n = 1; n <= horizon; ++n)
        for (int k = 1; k <= n; ++k) {
            Rational acc = 0;
            for (int m = 1; m <= n - k + 1; ++m) {
                const auto& prev = f[static_cast<std::size_t>(n - m)][static_cast<std::size_t>(k - 1)];
                if (prev != 0) acc += wp.b_at(m) * prev;
            }
            f[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)] = acc;
        }
    return f;
}

ShiftedZ::ShiftedZ(const WeightPair& wp, int horizon) {
    if (horizon < 0) throw DomainError("negative horizon");
    const auto f = composition_sums(wp, horizon);
    const int levels = std::max(horizon + 2, support_top(wp.a) + 1);
    z_.assign(static_cast<std::size_t>(levels), std::vector<Rational>(static_cast<std::size_t>(horizon) + 1));
    for (int l = 0; l < levels; ++l)
        for (int n = 0; n <= horizon; ++n) {
            Rational acc = 0;
            for (int k = 0; k <= n; ++k) {
                const auto& fk = f[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
                if (fk != 0) acc += wp.a_at(k + l) * fk;
            }
            z_[static_cast<std::size_t>(l)][static_cast<std::size_t>(n)] = acc;
        }
}

const Rational& ShiftedZ::operator()(int level, int n) const {
    if (level < 0 || level >= levels() || n < 0 || n > horizon())
        throw DomainError("Z table queried outside its range (level " + std::to_string(level) + ", n " +
                          std::to_string(n) + ")");
    return z_[static_cast<std::size_t>(level)][static_cast<std::size_t>(n)];
}

PartitionValue partition_function(const WeightPair& wp, int n) {
    if (n < 0) throw DomainError("negative size");
    const auto f = ShiftedZ::composition_sums(wp, n);
    Rational acc = 0;
    for (int k = 0; k <= n; ++k) acc += wp.a_at(k) * f[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
    return {acc, acc == 0};
}

std::map<Composition, Rational> comp_distribution(const WeightPair& wp, int n) {
    std::map<Composition, Rational> out;
    Rational z = 0;
    Composition cur;
    std::function<void(int, const Rational&)> rec = [&](int left, const Rational& prod) {
        if (left == 0) {
            Rational w = wp.a_at(static_cast<int>(cur.size())) * prod;
            if (w != 0) {
                out[cur] = w;
                z += w;
            }
            return;
        }
        for (int m = 1; m <= left; ++m) {
            const Rational& bm = wp.b_at(m);
            if (bm == 0) continue;
            cur.push_back(m);
            rec(left - m, prod * bm);
            cur.pop_back();
        }
    };
    rec(n, Rational(1));
    if (z == 0) throw DomainError("composition law at n=" + std::to_string(n) + " has zero mass");
    for (auto& [c, p] : out) p /= z;
    return out;
}

Rational StepLaw::at(int m) const {
    auto it = p.find(m);
    return it == p.end() ? Rational(0) : it->second;
}

Rational StepLaw::cdf(int m) const {
    Rational acc = 0;
    for (const auto& [k, v] : p) {
        if (k > m) break;
        acc += v;
    }
    return acc;
}

StepLaw first_part_law(const WeightPair& wp, int n, int d) {
    if (n < 1) throw DomainError("first part undefined for n < 1");
    const ShiftedZ z(wp, n);
    if (z(0, n) == 0) throw DomainError("composition law at n=" + std::to_string(n) + " has zero mass");
    StepLaw law{n, d, {}};
    for (int m = 1; m <= n; ++m) {
        Rational v = wp.b_at(m) * z(1, n - m) / z(0, n);
        if (v != 0) law.p[m] = v;
    }
    return law;
}

std::map<int, StepRow> monotone_step_kernel(const StepLaw& mu_n, const StepLaw& mu_n1, int level) {
    const int step = mu_n.step;
    for (int m = 1; m <= mu_n.n; m += step) {
        const Rational here = mu_n.at(m);
        if (mu_n1.at(m) > here || mu_n1.at(m + step) > here) throw NotCoupleable(level, mu_n.n, m);
    }
    std::map<int, StepRow> out;
    for (const auto& [m, pm] : mu_n.p) {
        if (pm == 0) continue;
        const Rational top = mu_n.cdf(m);
        const Rational low = std::max(mu_n.cdf(m - step), mu_n1.cdf(m));
        Rational up = top > low ? Rational((top - low) / pm) : Rational(0);
        out[m] = {1 - up, up};
    }
    return out;
}

CompositionCoupling::CompositionCoupling(WeightPair wp, int d, int horizon)
    : wp_(std::move(wp)), d_(d), h_(horizon), z_(wp_, horizon) {
    build();
}

CompositionCoupling::CompositionCoupling(WeightPair wp, int d, ShiftedZ z)
    : wp_(std::move(wp)), d_(d), h_(z.horizon()), z_(std::move(z)) {
    build();
}

std::size_t CompositionCoupling::index(int level, int n, int m) const {
    const auto H1 = static_cast<std::size_t>(h_ + 1);
    return (static_cast<std::size_t>(level) * H1 + static_cast<std::size_t>(n)) * H1 + static_cast<std::size_t>(m);
}

void CompositionCoupling::build() {
    if (d_ < 1) throw DomainError("d must be positive");
    if (h_ < 0) throw DomainError("negative horizon");
    for (int m = 1; m <= std::min(h_, wp_.b_horizon()); ++m)
        if ((m - 1) % d_ != 0 && wp_.b_at(m) != 0)
            throw DomainError("b_" + std::to_string(m) + " must vanish off the residue 1 mod d");
    const int L = z_.levels() - 1;
    const auto H1 = static_cast<std::size_t>(h_ + 1);
    q_.assign(static_cast<std::size_t>(L) * H1 * H1, Rational(0));
    cdf_.assign(q_.size(), ExactCdf());
    status_.assign(static_cast<std::size_t>(L) * H1, 0);
    failing_m_.assign(status_.size(), 0);

    std::vector<Rational> mu0, mu1, F0, F1;
    for (int l = 0; l < L; ++l)
        for (int n = 1; n + d_ <= h_; ++n) {
            const std::size_t row = static_cast<std::size_t>(l) * H1 + static_cast<std::size_t>(n);
            const Rational& zn = z_(l, n);
            const Rational& zn1 = z_(l, n + d_);
            if (zn == 0) continue;
            if (zn1 == 0) {
                status_[row] = 2;
                continue;
            }
            const int n1 = n + d_;
            mu0.assign(static_cast<std::size_t>(n1 + d_ + 1), Rational(0));
            mu1.assign(mu0.size(), Rational(0));
            for (int m = 1; m <= n; ++m) {
                const Rational& bm = wp_.b_at(m);
                if (bm != 0) mu0[static_cast<std::size_t>(m)] = bm * z_(l + 1, n - m) / zn;
            }
            for (int m = 1; m <= n1; ++m) {
                const Rational& bm = wp_.b_at(m);
                if (bm != 0) mu1[static_cast<std::size_t>(m)] = bm * z_(l + 1, n1 - m) / zn1;
            }
            int bad = 0;
            for (int m = 1; m <= n && !bad; m += d_) {
                const auto& here = mu0[static_cast<std::size_t>(m)];
                if (mu1[static_cast<std::size_t>(m)] > here || mu1[static_cast<std::size_t>(m + d_)] > here) bad = m;
            }
            if (bad) {
                status_[row] = 2;
                failing_m_[row] = bad;
                continue;
            }
            F0.assign(mu0.size(), Rational(0));
            F1.assign(mu0.size(), Rational(0));
            for (std::size_t m = 1; m < mu0.size(); ++m) {
                F0[m] = F0[m - 1] + mu0[m];
                F1[m] = F1[m - 1] + mu1[m];
            }
            for (int m = 1; m <= n; ++m) {
                const auto um = static_cast<std::size_t>(m);
                if (mu0[um] == 0) continue;
                const Rational& prev = m > d_ ? F0[um - static_cast<std::size_t>(d_)] : F0[0];
                const Rational low = std::max(prev, F1[um]);
                Rational up = F0[um] > low ? Rational((F0[um] - low) / mu0[um]) : Rational(0);
                const std::size_t at = index(l, n, m);
                cdf_[at] = ExactCdf::bernoulli(up);
                q_[at] = std::move(up);
            }
            status_[row] = 1;
        }
}

Rational CompositionCoupling::mu(int level, int n, int m) const {
    const Rational& zn = z_(level, n);
    if (zn == 0) throw DomainError("no mass at level " + std::to_string(level) + ", n=" + std::to_string(n));
    if (m < 1 || m > n) return 0;
    return wp_.b_at(m) * z_(level + 1, n - m) / zn;
}

StepLaw CompositionCoupling::first_part_law(int level, int n) const {
    StepLaw law{n, d_, {}};
    for (int m = 1; m <= n; ++m) {
        Rational v = mu(level, n, m);
        if (v != 0) law.p[m] = v;
    }
    return law;
}

const Rational& CompositionCoupling::q(int level, int n, int m) const {
    if (level < 0 || level >= z_.levels() - 1 || n < 1 || n + d_ > h_)
        throw DomainError("coupling queried outside its horizon (level " + std::to_string(level) + ", n " +
                          std::to_string(n) + ")");
    const std::size_t row = static_cast<std::size_t>(level) * static_cast<std::size_t>(h_ + 1) + static_cast<std::size_t>(n);
    if (status_[row] == 0)
        throw DomainError("no mass at level " + std::to_string(level) + ", n=" + std::to_string(n));
    if (status_[row] == 2) throw NotCoupleable(level, n, failing_m_[row]);
    if (m < 1 || m > n) throw DomainError("first part out of range");
    return q_[index(level, n, m)];
}

const ExactCdf& CompositionCoupling::bernoulli(int level, int n, int m) const {
    q(level, n, m);
    const auto& c = cdf_[index(level, n, m)];
    if (c.size() == 0) throw DomainError("first part " + std::to_string(m) + " has no mass");
    return c;
}

void CompositionCoupling::check_append(int level) const {
    if (level < 0 || level >= z_.levels() || d_ > h_) throw DomainError("append outside horizon");
    if (z_(level, d_) == 0) throw NotCoupleable(level, 0, 0);
}

std::map<Composition, Rational> CompositionCoupling::kernel_row(const Composition& c, int level) const {
    std::map<Composition, Rational> out;
    int n = total(c);
    if (n + d_ > h_) throw DomainError("kernel row beyond the horizon");
    Rational rest = 1;
    int l = level;
    for (std::size_t p = 0; p < c.size(); ++p, ++l) {
        const Rational& up = q(l, n, c[p]);
        if (up != 0) {
            Composition c2 = c;
            c2[p] += d_;
            out[c2] += rest * up;
        }
        rest *= 1 - up;
        if (rest == 0) return out;
        n -= c[p];
    }
    check_append(l);
    Composition c2 = c;
    c2.insert(c2.end(), static_cast<std::size_t>(d_), 1);
    out[c2] += rest;
    return out;
}

Composition CompositionCoupling::step(const Composition& c, CounterRng& rng, int level) const {
    int n = total(c);
    if (n + d_ > h_) throw DomainError("step beyond the horizon");
    int l = level;
    for (std::size_t p = 0; p < c.size(); ++p, ++l) {
        if (bernoulli(l, n, c[p]).sample(rng) == 0) {
            Composition c2 = c;
            c2[p] += d_;
            return c2;
        }
        n -= c[p];
    }
    check_append(l);
    Composition c2 = c;
    c2.insert(c2.end(), static_cast<std::size_t>(d_), 1);
    return c2;
}

void CheckReport::check_le(const Rational& lhs, const Rational& rhs, const std::string& where) {
    ++checked;
    if (!(lhs <= rhs)) failures.push_back({where, lhs, rhs});
}

void CheckReport::check_eq(const Rational& lhs, const Rational& rhs, const std::string& where) {
    ++checked;
    if (lhs != rhs) failures.push_back({where, lhs, rhs});
}

void CheckReport::merge(const CheckReport& other) {
    checked += other.checked;
    failures.insert(failures.end(), other.failures.begin(), other.failures.end());
}

namespace {

// num/den with den = 0 treated as undefined; returns false in that case.
bool ratio(const Rational& num, const Rational& den, Rational& out) {
    if (den == 0) return false;
    out = num / den;
    return true;
}

}  // namespace

CheckReport check_admissibility_inequalities(const WeightPair& wp, ArithClass cls, int N) {
    CheckReport rep;
    const int d = cls.d;
    if (cls.s != 0) throw DomainError("admissibility inequalities are stated for residue class 0");
    if (!is_arith_non_degenerate(wp, cls)) throw DomainError("weight pair is degenerate for this class");
    const int top = support_top(wp.a);
    if (d == 1) {
        const int r = top;
        if (r == 1) return rep;
        const ShiftedZ z(wp, N + 2);
        for (int n = 0; n <= N; ++n)
            for (int l = 0; l <= r - 1; ++l) {
                Rational mid, left, right;
                const std::string tag = "n=" + std::to_string(n) + " l=" + std::to_string(l);
                if (!ratio(z(l, n + 1), z(l, n), mid)) {
                    rep.failures.push_back({tag + " undefined Z ratio", z(l, n + 1), z(l, n)});
                    continue;
                }
                if (n >= 1 && ratio(wp.b_at(n + 1), wp.b_at(n), left)) rep.check_le(left, mid, tag + " left");
                if (ratio(wp.b_at(n + 2), wp.b_at(n + 1), right)) rep.check_le(mid, right, tag + " right");
            }
        return rep;
    }
    const int r = top / d;
    const ShiftedZ z(wp, (N + 1) * d + 1);
    auto R = [&](int n, int q, int s, Rational& out) {
        const int hi = n * d + (d - s);
        const int lo = (n - 1) * d + (d - s);
        if (lo < 0) return false;
        return ratio(z(q * d + s, hi), z(q * d + s, lo), out);
    };
    for (int n = 0; n <= N; ++n) {
        Rational bl, br;
        const bool has_left = n >= 1 && ratio(wp.b_at(n * d + 1), wp.b_at((n - 1) * d + 1), bl);
        const bool has_right = ratio(wp.b_at((n + 1) * d + 1), wp.b_at(n * d + 1), br);
        for (int q = 0; q < r; ++q)
            for (int s = 0; s < d; ++s) {
                Rational Rqs;
                if (!R(n, q, s, Rqs)) continue;
                const std::string tag = "n=" + std::to_string(n) + " (q,s)=(" + std::to_string(q) + "," +
                                        std::to_string(s) + ")";
                if (has_left) rep.check_le(bl, Rqs, tag + " left");
                if (has_right) rep.check_le(Rqs, br, tag + " right");
                for (int q2 = q; q2 < r; ++q2)
                    for (int s2 = s; s2 < d; ++s2) {
                        if (q2 == q && s2 == s) continue;
                        Rational R2;
                        if (!R(n, q2, s2, R2)) continue;
                        rep.check_le(R2, Rqs, tag + " vs (" + std::to_string(q2) + "," + std::to_string(s2) + ")");
                    }
            }
    }
    return rep;
}

std::vector<Composition> sample_composition_chain(const WeightPair& wp, ArithClass cls, int N, CounterRng& rng) {
    if (cls.s > N) throw DomainError("horizon below the starting size");
    const CompositionCoupling cc(wp, cls.d, N);
    Composition c(static_cast<std::size_t>(cls.s), 1);
    if (ShiftedZ(wp, cls.s)(0, cls.s) == 0) throw DomainError("starting composition has zero mass");
    std::vector<Composition> out{c};
    while (total(c) + cls.d <= N) {
        c = cc.step(c, rng);
        out.push_back(c);
    }
    return out;
}

}  // namespace sgt
