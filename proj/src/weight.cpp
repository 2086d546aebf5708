#include "totcheck/weight.hpp"

#include <fmt/format.h>

namespace totcheck::sct {

ZInf add_zinf(ZInf a, ZInf b) {
  if (a == kInf || b == kInf) return kInf;
  return a + b;
}

Weight Weight::daimon() {
  Weight w;
  w.daimon_ = true;
  return w;
}

Weight Weight::single(int prio, ZInf v) {
  Weight w;
  w.entries_[prio] = v;
  return w;
}

Weight Weight::zeros(int max_prio) {
  Weight w;
  for (int i = 0; i <= max_prio; ++i) w.entries_[i] = 0;
  return w;
}

std::optional<int> Weight::max_priority() const {
  if (daimon_ || entries_.empty()) return std::nullopt;
  return entries_.rbegin()->first;
}

ZInf Weight::at(int prio) const {
  auto it = entries_.find(prio);
  return it == entries_.end() ? 0 : it->second;
}

Weight Weight::operator+(const Weight& o) const {
  if (daimon_ || o.daimon_) return daimon();
  Weight out = *this;
  for (const auto& [p, v] : o.entries_) {
    auto it = out.entries_.find(p);
    if (it == out.entries_.end())
      out.entries_[p] = v;
    else
      it->second = add_zinf(it->second, v);
  }
  return out;
}

Weight Weight::operator-() const {
  if (daimon_) return *this;
  Weight out = *this;
  for (auto& [p, v] : out.entries_)
    if (v != kInf) v = -v;
  return out;
}

bool Weight::operator<(const Weight& o) const {
  if (daimon_ != o.daimon_) return daimon_;
  return entries_ < o.entries_;
}

Weight weight_add(const Weight& a, const Weight& b) { return a + b; }

bool weight_leq(const Weight& a, const Weight& b) {
  if (a.is_daimon()) return true;
  if (b.is_daimon()) return false;
  for (const auto& [p, bv] : b.entries()) {
    if (!a.has(p)) return false;
    ZInf av = a.at(p);
    if (av == kInf) continue;
    if (bv == kInf || av < bv) return false;
  }
  return true;
}

ZInf collapse_entry(ZInf w, int B) {
  if (w == kInf || w >= B) return kInf;
  if (w < -B) return -B;
  return w;
}

Weight collapse_weight(const Weight& a, int B) {
  if (a.is_daimon()) return a;
  Weight out;
  for (const auto& [p, v] : a.entries()) out += Weight::single(p, collapse_entry(v, B));
  return out;
}

std::string zinf_to_string(ZInf w) {
  if (w == kInf) return "inf";
  if (w > 0) return fmt::format("+{}", w);
  return std::to_string(w);
}

std::string to_string(const Weight& w) {
  if (w.is_daimon()) return "<T>";
  std::string s = "<";
  bool first = true;
  for (const auto& [p, v] : w.entries()) {
    if (!first) s += ",";
    first = false;
    s += fmt::format("{}@{}", zinf_to_string(v), p);
  }
  return s + ">";
}

}  // namespace totcheck::sct
