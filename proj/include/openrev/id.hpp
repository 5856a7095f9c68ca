#pragma once

#include <compare>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

namespace openrev {

// Opaque string identifier tagged by the entity it names. Ordering is plain
// byte-wise string ordering, which is the canonical order everywhere.
template <typename Tag>
class Id {
 public:
  Id() = default;
  explicit Id(std::string value) : value_(std::move(value)) {}
  explicit Id(std::string_view value) : value_(value) {}
  explicit Id(const char* value) : value_(value) {}

  const std::string& str() const noexcept { return value_; }
  bool empty() const noexcept { return value_.empty(); }

  friend auto operator<=>(const Id&, const Id&) = default;
  friend bool operator==(const Id&, const Id&) = default;

  friend std::ostream& operator<<(std::ostream& os, const Id& id) { return os << id.value_; }

 private:
  std::string value_;
};

using ScholarId = Id<struct ScholarTag>;
using ArticleId = Id<struct ArticleTag>;
using ReviewId = Id<struct ReviewTag>;
using IssueId = Id<struct IssueTag>;

}  // namespace openrev

template <typename Tag>
struct std::hash<openrev::Id<Tag>> {
  std::size_t operator()(const openrev::Id<Tag>& id) const noexcept {
    return std::hash<std::string>{}(id.str());
  }
};
