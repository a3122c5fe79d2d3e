#pragma once

#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace bipre {

/// Element of a finite ring or group, as an index into its tables.
using Elem = std::size_t;

/// Default bound on the number of items any exhaustive check may enumerate.
inline constexpr std::size_t kDefaultBudget = 1'000'000;

/// One failed law instance (or one structural defect).
///
/// `where` names the component the law was evaluated in (e.g. "R1(f)"),
/// `witness` holds the identifiers needed to re-evaluate exactly this
/// instance, and `detail` shows both evaluated sides.
struct Violation {
  std::string law;
  std::string where;
  std::vector<std::string> witness;
  std::string detail;
  bool structural = false;

  bool operator==(const Violation&) const = default;
};

class ValidationReport {
 public:
  void add(Violation v) { violations_.push_back(std::move(v)); }
  void merge(const ValidationReport& other, const std::string& where_prefix = {});

  [[nodiscard]] bool ok() const { return violations_.empty(); }
  [[nodiscard]] bool has_structural() const;
  [[nodiscard]] const std::vector<Violation>& violations() const { return violations_; }
  [[nodiscard]] std::set<std::string> laws() const;
  [[nodiscard]] std::size_t size() const { return violations_.size(); }

  bool operator==(const ValidationReport&) const = default;

 private:
  std::vector<Violation> violations_;
};

/// Base for errors that carry the full list of findings behind them.
class ReportedError : public std::runtime_error {
 public:
  ReportedError(const std::string& what, ValidationReport report)
      : std::runtime_error(what), report_(std::move(report)) {}
  [[nodiscard]] const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

/// Input data that cannot even be given a meaning (dangling ids, partial tables).
class StructuralError : public ReportedError {
 public:
  explicit StructuralError(const std::string& what, ValidationReport report = {})
      : ReportedError(what, std::move(report)) {}
};

/// A constructor was asked for an object that fails its axioms.
class AxiomError : public ReportedError {
 public:
  AxiomError(const std::string& what, ValidationReport report)
      : ReportedError(what, std::move(report)) {}
};

/// An exhaustive check would exceed its enumeration budget.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

/// Counts enumerated items and throws ResourceError once `limit` is passed.
class BudgetMeter {
 public:
  BudgetMeter(std::size_t limit, std::string what) : limit_(limit), what_(std::move(what)) {}
  void charge(std::size_t n = 1);
  [[nodiscard]] std::size_t used() const { return used_; }
  [[nodiscard]] std::size_t limit() const { return limit_; }

 private:
  std::size_t limit_;
  std::size_t used_ = 0;
  std::string what_;
};

/// Multiplies item counts, saturating at `cap + 1` so callers can compare
/// against a budget without overflow.
std::size_t saturating_mul(std::size_t a, std::size_t b, std::size_t cap);

}  // namespace bipre
