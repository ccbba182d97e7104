#ifndef MAXDIM_PRODUCT_HPP
#define MAXDIM_PRODUCT_HPP

#include <memory>
#include <vector>

#include "maxdim/errors.hpp"
#include "maxdim/group.hpp"
#include "maxdim/homomorphism.hpp"

namespace maxdim {

// H x K acting on the disjoint union of the two point sets. Keeps the
// canonical projections/embeddings and a pair<->id table so Goursat
// catalogs can decompose product elements cheaply.
struct DirectProduct {
  FiniteGroup const* left = nullptr;
  FiniteGroup const* right = nullptr;
  GroupPtr group;
  std::unique_ptr<GroupMap> proj_left, proj_right;    // product -> factor
  std::unique_ptr<GroupMap> embed_left, embed_right;  // factor -> product

  ElementId pair_id(ElementId x, ElementId y) const {
    return pair_to_id_[std::size_t{x} * right->order() + y];
  }
  ElementId left_part(ElementId p) const { return proj_left->apply(p); }
  ElementId right_part(ElementId p) const { return proj_right->apply(p); }

  std::vector<ElementId> pair_to_id_;
};

inline DirectProduct direct_product(FiniteGroup const& g, FiniteGroup const& h,
                                    std::uint32_t cap = 50'000) {
  if (std::uint64_t{g.order()} * h.order() > cap)
    throw CapExceeded("direct product order exceeds cap");
  std::uint32_t const dg = g.degree(), dh = h.degree();
  std::vector<Permutation> gens;
  for (auto const& p : g.generators()) {
    std::vector<Point> im(dg + dh);
    for (std::uint32_t i = 0; i < dg; ++i) im[i] = p[i];
    for (std::uint32_t i = 0; i < dh; ++i) im[dg + i] = static_cast<Point>(dg + i);
    gens.emplace_back(std::move(im));
  }
  for (auto const& p : h.generators()) {
    std::vector<Point> im(dg + dh);
    for (std::uint32_t i = 0; i < dg; ++i) im[i] = static_cast<Point>(i);
    for (std::uint32_t i = 0; i < dh; ++i) im[dg + i] = static_cast<Point>(dg + p[i]);
    gens.emplace_back(std::move(im));
  }

  DirectProduct out;
  out.left = &g;
  out.right = &h;
  out.group = std::make_shared<FiniteGroup const>(std::move(gens), cap);
  if (out.group->order() != g.order() * h.order())
    throw std::logic_error("product enumeration does not match |G||H|");

  auto const& prod = *out.group;
  std::size_t const kg = g.generator_count();
  std::vector<ElementId> pl, pr, el, er;
  for (std::size_t j = 0; j < kg; ++j) {
    pl.push_back(g.generator_id(j));
    pr.push_back(h.identity());
    el.push_back(prod.generator_id(j));
  }
  for (std::size_t j = 0; j < h.generator_count(); ++j) {
    pl.push_back(g.identity());
    pr.push_back(h.generator_id(j));
    er.push_back(prod.generator_id(kg + j));
  }
  out.proj_left = std::make_unique<GroupMap>(prod, g, std::move(pl), MapKind::projection);
  out.proj_right = std::make_unique<GroupMap>(prod, h, std::move(pr), MapKind::projection);
  out.embed_left = std::make_unique<GroupMap>(g, prod, std::move(el), MapKind::homomorphism);
  out.embed_right = std::make_unique<GroupMap>(h, prod, std::move(er), MapKind::homomorphism);

  out.pair_to_id_.assign(std::size_t{g.order()} * h.order(), kNoElement);
  for (ElementId p = 0; p < prod.order(); ++p)
    out.pair_to_id_[std::size_t{out.proj_left->apply(p)} * h.order() +
                    out.proj_right->apply(p)] = p;
  return out;
}

}  // namespace maxdim

#endif  // MAXDIM_PRODUCT_HPP
