#ifndef MAXDIM_CORPUS_HPP
#define MAXDIM_CORPUS_HPP

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "maxdim/config.hpp"
#include "maxdim/groupspec.hpp"

namespace maxdim {

// Named, reproducible group recipes standing in for a small-groups
// database. Groups are built lazily and cached per entry.
class CorpusEntry {
 public:
  CorpusEntry(std::string name, std::string spec_text)
      : name_(std::move(name)), spec_text_(std::move(spec_text)) {}

  std::string const& name() const { return name_; }
  std::string const& spec_text() const { return spec_text_; }

  BuiltGroup const& built(Config const& cfg = default_config()) const {
    std::call_once(once_, [&] {
      auto recipe = parse_group_spec(spec_text_);
      built_ = build_group(recipe, cfg.element_cap, cfg.lattice_cap);
    });
    return built_;
  }

  FiniteGroup const& group(Config const& cfg = default_config()) const {
    return *built(cfg).group;
  }

 private:
  std::string name_;
  std::string spec_text_;
  mutable std::once_flag once_;
  mutable BuiltGroup built_;
};

using Corpus = std::vector<std::shared_ptr<CorpusEntry>>;

// The built-in corpus. Families chosen so that the order <= 200 slice has
// well over 40 entries, products up to order <= 2000 exercise the Goursat
// path, and the special entries (wreaths, PSL(2,p), A5 x A5) back the
// headline checks.
inline Corpus default_corpus() {
  Corpus c;
  auto add = [&](std::string name, std::string spec) {
    c.push_back(std::make_shared<CorpusEntry>(std::move(name), std::move(spec)));
  };
  for (std::uint32_t n :
       {1u, 2u, 3u, 4u, 5u, 6u, 7u, 8u, 9u, 10u, 12u, 15u, 16u, 20u, 24u, 30u, 36u, 48u, 60u, 100u})
    add("Z" + std::to_string(n), "family: cyclic " + std::to_string(n));
  for (std::uint32_t n : {3u, 4u, 5u, 6u, 7u, 8u, 10u, 12u})
    add("D" + std::to_string(n) + " (order " + std::to_string(2 * n) + ")",
        "family: dihedral " + std::to_string(n));
  add("Q8", "family: quaternion 8");
  add("V4", "family: elementaryAbelian 2 2");
  add("E8", "family: elementaryAbelian 2 3");
  add("E16", "family: elementaryAbelian 2 4");
  add("E32", "family: elementaryAbelian 2 5");
  add("E9", "family: elementaryAbelian 3 2");
  add("E27", "family: elementaryAbelian 3 3");
  add("E25", "family: elementaryAbelian 5 2");
  add("S3", "family: symmetric 3");
  add("S4", "family: symmetric 4");
  add("S5", "family: symmetric 5");
  add("A4", "family: alternating 4");
  add("A5", "family: alternating 5");
  add("Z2wrZ2", "family: wreathCyclic 2");
  add("Z3wrZ3", "family: wreathCyclic 3");
  add("PSL(2,5)", "family: psl2 5");
  add("PSL(2,7)", "family: psl2 7");
  add("Z2xZ2", "family: directProduct [family: cyclic 2] [family: cyclic 2]");
  add("Z6xZ2", "family: directProduct [family: cyclic 6] [family: cyclic 2]");
  add("S3xZ5", "family: directProduct [family: symmetric 3] [family: cyclic 5]");
  add("S3xS3", "family: directProduct [family: symmetric 3] [family: symmetric 3]");
  add("Q8xS3", "family: directProduct [family: quaternion 8] [family: symmetric 3]");
  add("D4xD4", "family: directProduct [family: dihedral 4] [family: dihedral 4]");
  add("A4xS3", "family: directProduct [family: alternating 4] [family: symmetric 3]");
  add("A4xZ5", "family: directProduct [family: alternating 4] [family: cyclic 5]");
  add("S4xS3", "family: directProduct [family: symmetric 4] [family: symmetric 3]");
  add("A4xA4", "family: directProduct [family: alternating 4] [family: alternating 4]");
  add("A5xZ2", "family: directProduct [family: alternating 5] [family: cyclic 2]");
  add("Z10xZ10", "family: directProduct [family: cyclic 10] [family: cyclic 10]");
  add("S4xS4", "family: directProduct [family: symmetric 4] [family: symmetric 4]");
  add("A5xS3", "family: directProduct [family: alternating 5] [family: symmetric 3]");
  add("A5xA4", "family: directProduct [family: alternating 5] [family: alternating 4]");
  add("A5xA5", "family: directProduct [family: alternating 5] [family: alternating 5]");
  return c;
}

}  // namespace maxdim

#endif  // MAXDIM_CORPUS_HPP
