#pragma once

#include <array>
#include <memory>
#include <string>
#include <string_view>

#include <openssl/evp.h>

#include "openrev/event.hpp"
#include "openrev/state.hpp"

namespace openrev {

struct StateDigest {
  std::string hex;  // "sha256:" followed by 64 lowercase hex digits

  friend bool operator==(const StateDigest&, const StateDigest&) = default;
};

namespace detail {

inline std::string to_hex(const unsigned char* bytes, std::size_t n) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    out += kHex[bytes[i] >> 4];
    out += kHex[bytes[i] & 0xf];
  }
  return out;
}

// Feeds a self-delimiting byte encoding into SHA-256: strings as
// "<length>:<bytes>", integers as decimal followed by ';', and one-letter
// tags opening each record.
class CanonicalHasher {
 public:
  CanonicalHasher() : ctx_(EVP_MD_CTX_new(), &EVP_MD_CTX_free) {
    EVP_DigestInit_ex(ctx_.get(), EVP_sha256(), nullptr);
    buffer_.reserve(kFlushAt + 256);
  }

  CanonicalHasher& tag(char t) {
    buffer_ += t;
    return maybe_flush();
  }
  CanonicalHasher& str(std::string_view s) {
    buffer_ += std::to_string(s.size());
    buffer_ += ':';
    buffer_.append(s);
    return maybe_flush();
  }
  CanonicalHasher& num(std::uint64_t n) {
    buffer_ += std::to_string(n);
    buffer_ += ';';
    return maybe_flush();
  }
  template <typename Tag>
  CanonicalHasher& id(const Id<Tag>& i) {
    return str(i.str());
  }

  std::string finish() {
    flush();
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx_.get(), md.data(), &len);
    return to_hex(md.data(), len);
  }

 private:
  static constexpr std::size_t kFlushAt = 1 << 16;

  CanonicalHasher& maybe_flush() {
    if (buffer_.size() >= kFlushAt) flush();
    return *this;
  }
  void flush() {
    EVP_DigestUpdate(ctx_.get(), buffer_.data(), buffer_.size());
    buffer_.clear();
  }

  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx_;
  std::string buffer_;
};

}  // namespace detail

inline std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(), nullptr);
  return detail::to_hex(md.data(), len);
}

/// Fingerprint of the primary content of a state, taken in identifier order.
/// Indexes are left out; they are functions of what is hashed.
inline StateDigest digest(const EngineState& st) {
  detail::CanonicalHasher h;
  h.tag('C').num(st.config.min_issue_size).num(st.last_seq);
  for (const auto& [id, s] : st.scholars) h.tag('S').id(id).str(s.display_name).num(s.registered_at);
  for (const auto& [owner, j] : st.journals) {
    h.tag('J').id(owner).num(j.issues.size());
    for (const auto& i : j.issues) h.id(i);
    h.num(j.subscribers.size());
    for (const auto& s : j.subscribers) h.id(s);
  }
  for (const auto& [id, a] : st.articles) {
    h.tag('A').id(id).str(a.canonical_uri.str()).num(a.authors.size());
    for (const auto& s : a.authors) h.id(s);
    h.num(a.versions.size());
    for (const auto& v : a.versions) {
      h.num(v.number).str(v.content_digest).num(v.created_at).num(v.acknowledged_reviews.size());
      for (const auto& r : v.acknowledged_reviews) h.id(r);
    }
  }
  for (const auto& [id, r] : st.reviews) {
    h.tag('R').id(id).id(r.article).num(r.target_version).id(r.reviewer).str(r.body).num(r.posted_at);
  }
  for (const auto& [key, v] : st.review_votes) {
    h.tag('V').id(v.review).id(v.voter).tag(v.sign > 0 ? '+' : '-').num(v.cast_at);
  }
  for (const auto& [key, v] : st.validity_votes) {
    h.tag('W').id(v.article).id(v.voter).str(choice_name(v.choice));
    if (v.substantiation) {
      h.tag('s').id(*v.substantiation);
    } else {
      h.tag('n');
    }
    h.num(v.version_seen).num(v.cast_at);
  }
  for (const auto& [key, m] : st.priority_marks) {
    h.tag('P').str(m.item.str()).id(m.scholar).tag(m.active ? '1' : '0').num(m.toggled_at);
  }
  for (const auto& [id, i] : st.issues) {
    h.tag('I').id(id).id(i.journal_owner).str(i.title).str(i.editorial).num(i.released_at);
    h.num(i.entries.size());
    for (const auto& e : i.entries) {
      h.str(e.item);
      if (e.comment) {
        h.tag('c').str(*e.comment);
      } else {
        h.tag('n');
      }
    }
  }
  return {"sha256:" + h.finish()};
}

}  // namespace openrev
