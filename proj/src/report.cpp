#include "bipre/report.hpp"

#include <algorithm>

namespace bipre {

void ValidationReport::merge(const ValidationReport& other, const std::string& where_prefix) {
  for (Violation v : other.violations_) {
    if (!where_prefix.empty()) {
      v.where = v.where.empty() ? where_prefix : where_prefix + "/" + v.where;
    }
    violations_.push_back(std::move(v));
  }
}

bool ValidationReport::has_structural() const {
  return std::any_of(violations_.begin(), violations_.end(),
                     [](const Violation& v) { return v.structural; });
}

std::set<std::string> ValidationReport::laws() const {
  std::set<std::string> out;
  for (const auto& v : violations_) out.insert(v.law);
  return out;
}

void BudgetMeter::charge(std::size_t n) {
  used_ = n > limit_ - std::min(used_, limit_) ? limit_ + 1 : used_ + n;
  if (used_ > limit_) {
    throw ResourceError(what_ + " exceeds the budget of " + std::to_string(limit_) + " items");
  }
}

std::size_t saturating_mul(std::size_t a, std::size_t b, std::size_t cap) {
  if (a == 0 || b == 0) return 0;
  if (a > cap / b) return cap + 1;
  return a * b;
}

}  // namespace bipre
