#include "mtkit/abelian.hpp"

namespace mtkit {

GroupHom::GroupHom(FiniteAbelianGroup source, FiniteAbelianGroup target,
                   std::vector<Exponents> generator_images)
    : src_(std::move(source)), tgt_(std::move(target)), gen_images_(std::move(generator_images)) {
  if (gen_images_.size() != src_.rank())
    throw ConfigError("one generator image per source coordinate required");
  std::vector<uint64_t> img_idx(src_.rank());
  for (size_t i = 0; i < src_.rank(); ++i) {
    if (gen_images_[i].size() != tgt_.rank())
      throw ConfigError("generator image has wrong coordinate count");
    img_idx[i] = tgt_.index_of(gen_images_[i]);
    // well-defined: order of the source generator kills its image
    if (tgt_.scale(img_idx[i], src_.factors()[i]) != 0)
      throw ConfigError("map does not respect coordinate orders; not a homomorphism");
  }
  map_.resize(src_.order());
  for (uint64_t idx = 0; idx < src_.order(); ++idx) {
    Exponents e = src_.element(idx);
    uint64_t t = 0;
    for (size_t i = 0; i < src_.rank(); ++i) t = tgt_.add(t, tgt_.scale(img_idx[i], e[i]));
    map_[idx] = t;
  }
  fibers_.assign(tgt_.order(), {});
  for (uint64_t idx = 0; idx < src_.order(); ++idx) fibers_[map_[idx]].push_back(idx);
  surjective_ = true;
  for (auto& f : fibers_)
    if (f.empty()) { surjective_ = false; break; }
}

GroupHom GroupHom::then(const GroupHom& second) const {
  if (tgt_ != second.src_) throw GroupMismatch("composition: target/source differ");
  std::vector<Exponents> images(src_.rank());
  for (size_t i = 0; i < src_.rank(); ++i) images[i] = second.apply(gen_images_[i]);
  return GroupHom(src_, second.tgt_, images);
}

}  // namespace mtkit
