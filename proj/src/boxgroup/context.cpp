#include "boxprod/boxgroup.hpp"
#include "boxprod/errors.hpp"

namespace boxprod {

namespace {

LegalColouring make_colouring(const PermGroup& M, const PermGroup& N, std::size_t depth,
                              std::optional<std::uint64_t> seed) {
  auto tree = std::make_shared<const TruncatedTree>(TreeParams{M.degree(), N.degree(), depth});
  return seed ? LegalColouring::random(tree, *seed) : LegalColouring::canonical(tree);
}

}  // namespace

BoxContext::BoxContext(PermGroup M, PermGroup N, std::size_t depth, std::size_t margin,
                       std::optional<std::uint64_t> colouring_seed)
    : BoxContext(make_colouring(M, N, depth, colouring_seed), LocalGroups(M, N), margin) {}

BoxContext::BoxContext(LegalColouring colouring, LocalGroups groups, std::size_t margin)
    : colouring_(std::move(colouring)), groups_(std::move(groups)), margin_(margin) {
  const TruncatedTree& t = tree();
  if (groups_.M().degree() != t.m() || groups_.N().degree() != t.n())
    throw InputError("group degrees do not match the tree valencies");
  if (margin_ > t.depth())
    throw InputError("margin " + std::to_string(margin_) + " exceeds depth " +
                     std::to_string(t.depth()));
  m_props_ = classify(groups_.M());
  n_props_ = classify(groups_.N());
}

std::vector<VertexId> BoxContext::inner(Part part) const {
  std::vector<VertexId> out;
  for (VertexId v : tree().inner_vertices(inner_radius()))
    if (tree().part(v) == part) out.push_back(v);
  return out;
}

}  // namespace boxprod
