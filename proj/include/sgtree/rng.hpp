#pragma once

#include <cstdint>
#include <initializer_list>
#include <string_view>
#include <vector>

#include "sgtree/rational.hpp"

namespace sgt {

// Counter-based generator: output i is a keyed mix of i, so a stream is
// fully determined by its key and can be re-derived anywhere.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t key) : key_(key) {}

    std::uint64_t next();
    std::uint64_t key() const { return key_; }
    std::uint64_t counter() const { return ctr_; }

    // Key for an independent stream named by a purpose string and ids.
    static std::uint64_t derive(std::uint64_t master, std::string_view purpose,
                                std::initializer_list<std::uint64_t> ids = {});

private:
    std::uint64_t key_;
    std::uint64_t ctr_ = 0;
};

std::uint64_t mix64(std::uint64_t x);
// Word hash built letter by letter, so a child's hash extends its parent's.
inline constexpr std::uint64_t kRootHash = 0x243F6A8885A308D3ULL;
std::uint64_t extend_hash(std::uint64_t h, int letter);
std::uint64_t hash_letters(const std::vector<int>& letters);

// Inverse-CDF sampler over a finite distribution with exact rational
// cumulative thresholds. The uniform variate is materialised 64 bits at a
// time, only as far as needed to decide every comparison exactly.
class ExactCdf {
public:
    ExactCdf() = default;
    explicit ExactCdf(const std::vector<Rational>& weights);

    // Two outcomes: index 0 with probability p, index 1 otherwise.
    static ExactCdf bernoulli(const Rational& p);

    std::size_t size() const { return cum_.size(); }
    const Rational& cumulative(std::size_t k) const { return cum_[k]; }
    std::size_t sample(CounterRng& rng) const;

private:
    std::size_t slow_path(CounterRng& rng, std::uint64_t first, std::size_t from) const;

    std::vector<Rational> cum_;
    std::vector<std::uint64_t> floor64_;
    std::vector<char> exact_;
    std::vector<char> is_one_;
};

}  // namespace sgt
