#pragma once

#include <algorithm>
#include <cctype>
#include <optional>
#include <string>
#include <string_view>

namespace openrev {

/// Normalized web identifier of a curatable item.
///
/// Two spellings that differ only in scheme/host case, an explicit default
/// port, or a trailing path slash compare equal after normalization. Path,
/// query and fragment keep their case.
class ItemUri {
 public:
  ItemUri() = default;

  /// Parses and normalizes; nullopt when `text` is not a syntactically valid
  /// absolute URI.
  static std::optional<ItemUri> parse(std::string_view text);

  const std::string& str() const noexcept { return value_; }

  friend auto operator<=>(const ItemUri&, const ItemUri&) = default;
  friend bool operator==(const ItemUri&, const ItemUri&) = default;

 private:
  explicit ItemUri(std::string normalized) : value_(std::move(normalized)) {}
  std::string value_;
};

namespace detail {

inline std::string_view default_port(std::string_view scheme) {
  if (scheme == "http" || scheme == "ws") return "80";
  if (scheme == "https" || scheme == "wss") return "443";
  if (scheme == "ftp") return "21";
  return {};
}

}  // namespace detail

inline std::optional<ItemUri> ItemUri::parse(std::string_view text) {
  for (unsigned char c : text) {
    if (c <= 0x20 || c == 0x7f) return std::nullopt;
  }
  const auto colon = text.find(':');
  if (colon == std::string_view::npos || colon == 0) return std::nullopt;
  const auto scheme_raw = text.substr(0, colon);
  if (!std::isalpha(static_cast<unsigned char>(scheme_raw.front()))) return std::nullopt;
  for (unsigned char c : scheme_raw) {
    if (!std::isalnum(c) && c != '+' && c != '-' && c != '.') return std::nullopt;
  }
  std::string out;
  out.reserve(text.size());
  for (unsigned char c : scheme_raw) out.push_back(static_cast<char>(std::tolower(c)));
  const std::string_view scheme(out);
  std::string_view rest = text.substr(colon + 1);

  if (rest.substr(0, 2) != "//") {
    // Opaque form (urn:, doi:, mailto:): only the scheme is case-folded.
    if (rest.empty()) return std::nullopt;
    out += ':';
    out += rest;
    return ItemUri(std::move(out));
  }
  rest.remove_prefix(2);

  const auto authority_end = rest.find_first_of("/?#");
  std::string_view authority = rest.substr(0, authority_end);
  std::string_view tail = authority_end == std::string_view::npos ? std::string_view{}
                                                                  : rest.substr(authority_end);

  std::string_view userinfo;
  if (const auto at = authority.rfind('@'); at != std::string_view::npos) {
    userinfo = authority.substr(0, at + 1);
    authority.remove_prefix(at + 1);
  }
  std::string_view host = authority;
  std::string_view port;
  // Bracketed IPv6 literals carry colons of their own.
  const auto port_colon = authority.rfind(':');
  const auto bracket = authority.rfind(']');
  if (port_colon != std::string_view::npos &&
      (bracket == std::string_view::npos || port_colon > bracket)) {
    host = authority.substr(0, port_colon);
    port = authority.substr(port_colon + 1);
    if (!std::all_of(port.begin(), port.end(),
                     [](unsigned char c) { return std::isdigit(c) != 0; })) {
      return std::nullopt;
    }
  }
  if (host.empty()) return std::nullopt;

  const auto query_start = tail.find_first_of("?#");
  std::string_view path = tail.substr(0, query_start);
  std::string_view suffix =
      query_start == std::string_view::npos ? std::string_view{} : tail.substr(query_start);
  if (!path.empty() && path.back() == '/') path.remove_suffix(1);

  const bool default_port = port == detail::default_port(scheme);
  out += "://";
  out += userinfo;
  for (unsigned char c : host) out.push_back(static_cast<char>(std::tolower(c)));
  if (!port.empty() && !default_port) {
    out += ':';
    out += port;
  }
  out += path;
  out += suffix;
  return ItemUri(std::move(out));
}

}  // namespace openrev

template <>
struct std::hash<openrev::ItemUri> {
  std::size_t operator()(const openrev::ItemUri& u) const noexcept {
    return std::hash<std::string>{}(u.str());
  }
};
