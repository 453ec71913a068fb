#include "sgtree/rng.hpp"

#include <stdexcept>

namespace sgt {

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t CounterRng::next() {
    ++ctr_;
    return mix64(key_ + ctr_ * 0x9E3779B97F4A7C15ULL);
}

std::uint64_t CounterRng::derive(std::uint64_t master, std::string_view purpose,
                                 std::initializer_list<std::uint64_t> ids) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : purpose) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    std::uint64_t k = mix64(master ^ 0x5851F42D4C957F2DULL);
    k = mix64(k ^ h);
    for (auto id : ids) k = mix64(k ^ mix64(id + 0x2545F4914F6CDD1DULL));
    return k;
}

std::uint64_t extend_hash(std::uint64_t h, int letter) {
    return mix64(h + static_cast<std::uint64_t>(letter) * 0xD6E8FEB86659FD93ULL);
}

std::uint64_t hash_letters(const std::vector<int>& letters) {
    std::uint64_t h = kRootHash;
    for (int l : letters) h = extend_hash(h, l);
    return h;
}

namespace {

const BigInt& two64() {
    static const BigInt v = [] {
        BigInt x;
        mpz_ui_pow_ui(x.get_mpz_t(), 2, 64);
        return x;
    }();
    return v;
}

std::uint64_t to_u64(const BigInt& x) {
    std::uint64_t out = 0;
    mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, x.get_mpz_t());
    return out;
}

}  // namespace

ExactCdf::ExactCdf(const std::vector<Rational>& weights) {
    if (weights.empty()) throw std::invalid_argument("empty distribution");
    Rational total = 0;
    for (const auto& w : weights) {
        if (w < 0) throw std::invalid_argument("negative weight");
        total += w;
    }
    if (total != 1) throw std::invalid_argument("weights do not sum to 1: " + to_string(total));
    Rational acc = 0;
    for (std::size_t k = 0; k < weights.size(); ++k) {
        acc += weights[k];
        cum_.push_back(acc);
        bool one = (acc == 1);
        is_one_.push_back(one);
        if (one) {
            floor64_.push_back(0);
            exact_.push_back(1);
            continue;
        }
        BigInt scaled = acc.get_num() * two64();
        BigInt q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), scaled.get_mpz_t(), acc.get_den().get_mpz_t());
        floor64_.push_back(to_u64(q));
        exact_.push_back(r == 0);
    }
}

ExactCdf ExactCdf::bernoulli(const Rational& p) {
    if (p < 0 || p > 1) throw std::invalid_argument("probability out of range: " + to_string(p));
    return ExactCdf({p, Rational(1 - p)});
}

std::size_t ExactCdf::sample(CounterRng& rng) const {
    const std::uint64_t x = rng.next();
    for (std::size_t k = 0; k < cum_.size(); ++k) {
        if (is_one_[k]) return k;
        if (x < floor64_[k]) return k;
        if (x == floor64_[k] && !exact_[k]) return slow_path(rng, x, k);
    }
    return cum_.size() - 1;
}

// U lies in [A/2^L, (A+1)/2^L). Extend A until each threshold is decided.
std::size_t ExactCdf::slow_path(CounterRng& rng, std::uint64_t first, std::size_t from) const {
    BigInt a = static_cast<unsigned long>(first >> 32);
    a <<= 32;
    a += static_cast<unsigned long>(first & 0xFFFFFFFFULL);
    BigInt scale = two64();
    for (std::size_t k = from; k < cum_.size(); ++k) {
        if (is_one_[k]) return k;
        const BigInt& p = cum_[k].get_num();
        const BigInt& q = cum_[k].get_den();
        for (;;) {
            BigInt rhs = p * scale;
            BigInt lo = a * q;
            if (lo >= rhs) break;                 // U >= c_k
            if ((a + 1) * q <= rhs) return k;     // U < c_k
            std::uint64_t more = rng.next();
            a <<= 64;
            BigInt m = static_cast<unsigned long>(more >> 32);
            m <<= 32;
            m += static_cast<unsigned long>(more & 0xFFFFFFFFULL);
            a += m;
            scale <<= 64;
        }
    }
    return cum_.size() - 1;
}

}  // namespace sgt
