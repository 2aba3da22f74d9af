#include "planarsucc/mappings.hpp"

#include "planarsucc/errors.hpp"

namespace planarsucc {

IntExtMap::IntExtMap(Label lo, Label hi)
    : lo_(lo), hi_(hi), int_(CompactArray::for_max(hi - lo, hi)), ext_(CompactArray::for_max(hi - lo, hi)) {
  for (Label x = lo; x < hi; ++x) {
    int_.set(x - lo, x);
    ext_.set(x - lo, x);
  }
}

Label IntExtMap::internal(Label ext) const {
  if (!managed(ext)) return ext;
  counters().probes++;
  return static_cast<Label>(int_.get(ext - lo_));
}

Label IntExtMap::external(Label in) const {
  if (!managed(in)) return in;
  counters().probes++;
  return static_cast<Label>(ext_.get(in - lo_));
}

void IntExtMap::set(Label ext, Label in) {
  if (!managed(ext) || !managed(in)) fail(ErrorKind::NotManaged, "label outside the managed range");
  int_.set(ext - lo_, in);
  ext_.set(in - lo_, ext);
}

DynInverse::DynInverse(Label lo, const std::vector<Label>& initial, std::uint64_t max_value)
    : lo_(lo), values_(CompactArray::for_max(initial.size(), max_value)) {
  for (std::size_t t = 0; t < initial.size(); ++t) values_.set(t, initial[t]);
}

Label DynInverse::get(Label x) const {
  if (!managed(x)) fail(ErrorKind::NotManaged, "label has no dynamic inverse");
  counters().probes++;
  return static_cast<Label>(values_.get(x - lo_));
}

void DynInverse::set(Label x, Label value) {
  if (!managed(x)) fail(ErrorKind::NotManaged, "label has no dynamic inverse");
  values_.set(x - lo_, value);
}

HFamily::HFamily(std::size_t nb, std::size_t np, bool with_prime) : nb_(nb), np_(np), with_prime_(with_prime) {
  std::vector<bool> b(nb + np, false);
  for (std::size_t p = 0; p < np; ++p) b[nb + p] = true;
  h_ = ForbiddenGraph(nb + np, b);
  pos_ = ForbiddenGraph(nb + np, b);
  if (with_prime) prime_ = ForbiddenGraph(nb + np, b);
}

void HFamily::add(Label b, Label p, Label dup, bool positive) {
  h_.insert(b, static_cast<Label>(nb_ + p), dup);
  if (positive) pos_.insert(b, static_cast<Label>(nb_ + p), dup);
}

PhiMergeResult HFamily::phi_merge(Label u, Label v, Label survivor) {
  const Label other = survivor == u ? v : u;
  PhiMergeResult res;
  auto rep = h_.merge(u, v, survivor);
  for (const auto& e : rep.discarded_parallel)
    res.cap.emplace_back(e.b - static_cast<Label>(nb_), dup(survivor, e.b - static_cast<Label>(nb_)),
                         static_cast<Label>(e.payload));
  for (const auto& e : rep.inserted_new)
    res.only.emplace_back(e.b - static_cast<Label>(nb_), static_cast<Label>(e.payload));
  for (ForbiddenGraph* g : {&pos_, &prime_}) {
    if (g == &prime_ && !with_prime_) continue;
    for (const auto& c : res.cap) {
      const Label pv = static_cast<Label>(nb_) + std::get<0>(c);
      if (g->adjacent(other, pv)) g->erase(other, pv);
    }
    g->merge(u, v, survivor);
  }
  return res;
}

void HFamily::nonzero_update(Label b, Label p, Label dup, bool now_positive) {
  const Label pv = static_cast<Label>(nb_ + p);
  const bool has_edge = pos_.adjacent(b, pv);
  if (now_positive && !has_edge) pos_.insert(b, pv, dup);
  else if (!now_positive && has_edge) pos_.erase(b, pv);
  else if (has_edge && pos_.payload(b, pv) != dup) pos_.set_payload(b, pv, dup);
}

void HFamily::prime_update(Label b, Label p, Label dup, bool now_present) {
  if (!with_prime_) return;
  const Label pv = static_cast<Label>(nb_ + p);
  const bool has_edge = prime_.adjacent(b, pv);
  if (now_present && !has_edge) prime_.insert(b, pv, dup);
  else if (!now_present && has_edge) prime_.erase(b, pv);
}

void HFamily::delete_vertex(Label b) {
  h_.delete_vertex(b);
  pos_.delete_vertex(b);
  if (with_prime_) prime_.delete_vertex(b);
}

bool HFamily::check() const {
  if (!h_.check() || !pos_.check() || (with_prime_ && !prime_.check())) return false;
  // Every ^{>0} and prime edge is an H edge with the same payload.
  for (const ForbiddenGraph* g : {&pos_, &prime_}) {
    if (g == &prime_ && !with_prime_) continue;
    for (const auto& e : g->edges()) {
      if (!h_.adjacent(e.a, e.b) || h_.payload(e.a, e.b) != e.payload) return false;
    }
  }
  return true;
}

std::size_t HFamily::bits() const {
  const unsigned w = bits_for(nb_ + np_);
  return h_.bits(w) + pos_.bits(w) + (with_prime_ ? prime_.bits(w) : 0);
}

}  // namespace planarsucc
