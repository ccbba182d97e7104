#ifndef MAXDIM_CONFIG_HPP
#define MAXDIM_CONFIG_HPP

#include <cstdint>

namespace maxdim {

// Knobs shared by all searches and constructions. Every randomized
// subroutine draws its seed from `seed`, so runs are reproducible.
struct Config {
  std::uint64_t seed = 20180129;
  std::uint64_t node_budget = 10'000'000;  // per invariant search
  std::uint32_t element_cap = 50'000;      // max group order ever enumerated
  std::uint32_t lattice_cap = 2'000;       // max order for full subgroup lattices
  std::uint32_t meataxe_retries = 50;
  std::uint32_t meataxe_word_len = 6;
  std::uint64_t exhaustive_spin_cap = 1'000'000;  // p^dim bound for fallback
  std::uint64_t module_universe_cap = 200'000;    // p^dim bound for submodule bitmaps
  bool stretch = false;
};

inline Config& default_config() {
  static Config cfg;
  return cfg;
}

}  // namespace maxdim

#endif  // MAXDIM_CONFIG_HPP
