#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace totcheck::sct {

// Elements of Z extended with +infinity.
using ZInf = std::int64_t;
inline constexpr ZInf kInf = INT64_MAX;

ZInf add_zinf(ZInf a, ZInf b);

// A weight is either Daimon or a finite map priority -> ZInf.  An absent
// priority is the identity component; an explicit 0 is a distinct element.
class Weight {
 public:
  Weight() = default;

  static Weight daimon();
  static Weight empty() { return Weight(); }
  static Weight single(int prio, ZInf w);
  static Weight kappa(int prio) { return single(prio, 1); }
  // Sum of <0>^i for 0 <= i <= max_prio.
  static Weight zeros(int max_prio);

  bool is_daimon() const { return daimon_; }
  bool is_empty() const { return !daimon_ && entries_.empty(); }
  const std::map<int, ZInf>& entries() const { return entries_; }
  std::optional<int> max_priority() const;
  bool has(int prio) const { return entries_.count(prio) > 0; }
  ZInf at(int prio) const;

  Weight operator+(const Weight& o) const;
  Weight operator-() const;  // entrywise negation; only for finite entries
  Weight& operator+=(const Weight& o) { return *this = *this + o; }

  bool operator==(const Weight& o) const = default;
  // Arbitrary total order used for canonical sorting.
  bool operator<(const Weight& o) const;

 private:
  bool daimon_ = false;
  std::map<int, ZInf> entries_;
};

Weight weight_add(const Weight& a, const Weight& b);
bool weight_leq(const Weight& a, const Weight& b);
ZInf collapse_entry(ZInf w, int B);
Weight collapse_weight(const Weight& a, int B);

std::string to_string(const Weight& w);
std::string zinf_to_string(ZInf w);

}  // namespace totcheck::sct
