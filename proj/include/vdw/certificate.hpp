#pragma once

// Line-oriented certificate files:
//
//   vdwcert 1
//   k=3
//   r=2
//   n=8
//   chain=oracle-witness{r=2,k=3}
//   claims=mono-free,rainbow-free
//   1 1 2 2 1 1 2 2                 (or: payload_omitted)
//   sha256=<64 hex digits over the payload line, without newline>

#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <openssl/evp.h>

#include "vdw/ap_core.hpp"
#include "vdw/error.hpp"

namespace vdw {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr int kCertificateVersion = 1;
inline constexpr std::string_view kPayloadOmitted = "payload_omitted";

inline std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("sha256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    hex.push_back(kHex[digest[i] >> 4U]);
    hex.push_back(kHex[digest[i] & 0xFU]);
  }
  return hex;
}

// One replayable construction step, e.g. bct-blowup{p=3,r=3,prime=bhp}.
struct ChainStep {
  std::string kind;
  std::vector<std::pair<std::string, std::string>> fields;

  const std::string* find(std::string_view key) const {
    for (const auto& [k, v] : fields) {
      if (k == key) return &v;
    }
    return nullptr;
  }

  std::uint64_t get_u64(std::string_view key) const {
    const std::string* v = find(key);
    if (v == nullptr) throw InvalidParameter(kind + " step lacks field '" + std::string(key) + "'");
    std::size_t used = 0;
    std::uint64_t value = 0;
    try {
      value = std::stoull(*v, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != v->size() || v->empty()) {
      throw InvalidParameter(kind + " field '" + std::string(key) + "' is not an integer: " + *v);
    }
    return value;
  }

  friend bool operator==(const ChainStep&, const ChainStep&) = default;
};

struct Claims {
  bool mono_free = false;
  bool rainbow_free = false;
  friend bool operator==(const Claims&, const Claims&) = default;
};

struct Certificate {
  int format_version = kCertificateVersion;
  std::uint64_t k = 0;
  Color r = 0;
  BigInt n = 0;
  std::vector<ChainStep> method_chain;
  Claims claims;
  std::optional<std::vector<Color>> colors;  // nullopt: payload omitted
  std::string checksum;                      // as read from / written to the file

  bool has_payload() const noexcept { return colors.has_value(); }
  friend bool operator==(const Certificate&, const Certificate&) = default;
};

inline std::string format_chain(const std::vector<ChainStep>& chain) {
  std::string out;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (i != 0) out += ';';
    out += chain[i].kind;
    out += '{';
    for (std::size_t j = 0; j < chain[i].fields.size(); ++j) {
      if (j != 0) out += ',';
      out += chain[i].fields[j].first + '=' + chain[i].fields[j].second;
    }
    out += '}';
  }
  return out;
}

inline std::string format_claims(const Claims& c) {
  if (c.mono_free && c.rainbow_free) return "mono-free,rainbow-free";
  if (c.mono_free) return "mono-free";
  if (c.rainbow_free) return "rainbow-free";
  return "none";
}

inline std::string payload_line(const std::optional<std::vector<Color>>& colors) {
  if (!colors) return std::string(kPayloadOmitted);
  std::string line;
  line.reserve(colors->size() * 3);
  for (std::size_t i = 0; i < colors->size(); ++i) {
    if (i != 0) line += ' ';
    line += std::to_string((*colors)[i]);
  }
  return line;
}

inline std::string payload_checksum(const Certificate& cert) {
  return sha256_hex(payload_line(cert.colors));
}

// Fills in the checksum from the payload.
inline void seal(Certificate& cert) { cert.checksum = payload_checksum(cert); }

inline void write_certificate(std::ostream& os, const Certificate& cert) {
  os << "vdwcert " << cert.format_version << '\n'
     << "k=" << cert.k << '\n'
     << "r=" << cert.r << '\n'
     << "n=" << cert.n << '\n'
     << "chain=" << format_chain(cert.method_chain) << '\n'
     << "claims=" << format_claims(cert.claims) << '\n'
     << payload_line(cert.colors) << '\n'
     << "sha256=" << cert.checksum << '\n';
}

inline std::string to_text(const Certificate& cert) {
  std::ostringstream os;
  write_certificate(os, cert);
  return os.str();
}

namespace detail {

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

inline std::uint64_t parse_u64(std::string_view text, std::size_t line, std::string_view what) {
  if (text.empty()) throw ParseError(line, "empty " + std::string(what));
  std::uint64_t value = 0;
  for (char ch : text) {
    if (ch < '0' || ch > '9') throw ParseError(line, "bad " + std::string(what) + ": '" + std::string(text) + "'");
    const std::uint64_t next = value * 10 + static_cast<std::uint64_t>(ch - '0');
    if (next / 10 != value) throw ParseError(line, std::string(what) + " overflows 64 bits");
    value = next;
  }
  return value;
}

inline std::string_view expect_key(std::string_view text, std::string_view key, std::size_t line) {
  if (text.substr(0, key.size()) != key || text.size() < key.size() + 1 || text[key.size()] != '=') {
    throw ParseError(line, "expected '" + std::string(key) + "='");
  }
  return text.substr(key.size() + 1);
}

inline std::vector<ChainStep> parse_chain(std::string_view text, std::size_t line) {
  std::vector<ChainStep> chain;
  if (text.empty()) return chain;
  for (std::string_view item : split(text, ';')) {
    const std::size_t open = item.find('{');
    if (open == std::string_view::npos || open == 0 || item.back() != '}') {
      throw ParseError(line, "malformed chain step '" + std::string(item) + "'");
    }
    ChainStep step;
    step.kind = std::string(item.substr(0, open));
    const std::string_view body = item.substr(open + 1, item.size() - open - 2);
    if (!body.empty()) {
      for (std::string_view kv : split(body, ',')) {
        const std::size_t eq = kv.find('=');
        if (eq == std::string_view::npos || eq == 0) {
          throw ParseError(line, "malformed chain field '" + std::string(kv) + "'");
        }
        step.fields.emplace_back(std::string(kv.substr(0, eq)), std::string(kv.substr(eq + 1)));
      }
    }
    chain.push_back(std::move(step));
  }
  return chain;
}

inline Claims parse_claims(std::string_view text, std::size_t line) {
  Claims claims;
  if (text == "none") return claims;
  for (std::string_view name : split(text, ',')) {
    if (name == "mono-free") {
      claims.mono_free = true;
    } else if (name == "rainbow-free") {
      claims.rainbow_free = true;
    } else {
      throw ParseError(line, "unknown claim '" + std::string(name) + "'");
    }
  }
  return claims;
}

}  // namespace detail

// Parses the text form. Structural problems (bad header, field syntax, color
// count that disagrees with n, colors outside 1..r) raise ParseError with the
// offending line. The checksum is read but not checked here.
inline Certificate read_certificate(std::istream& is) {
  std::vector<std::string> lines;
  for (std::string line; std::getline(is, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.size() != 8) {
    throw ParseError(lines.size() + 1, "expected 8 lines, found " + std::to_string(lines.size()));
  }

  Certificate cert;
  const std::string_view header = lines[0];
  if (header.substr(0, 8) != "vdwcert ") throw ParseError(1, "missing 'vdwcert' header");
  cert.format_version = static_cast<int>(detail::parse_u64(header.substr(8), 1, "format version"));
  if (cert.format_version != kCertificateVersion) {
    throw ParseError(1, "unsupported format version " + std::to_string(cert.format_version));
  }
  cert.k = detail::parse_u64(detail::expect_key(lines[1], "k", 2), 2, "k");
  const std::uint64_t r = detail::parse_u64(detail::expect_key(lines[2], "r", 3), 3, "r");
  if (r < 1 || r > std::numeric_limits<Color>::max()) throw ParseError(3, "r out of range");
  cert.r = static_cast<Color>(r);
  const std::string_view n_text = detail::expect_key(lines[3], "n", 4);
  if (n_text.empty() || n_text.find_first_not_of("0123456789") != std::string_view::npos) {
    throw ParseError(4, "bad n: '" + std::string(n_text) + "'");
  }
  cert.n = BigInt(std::string(n_text));
  cert.method_chain = detail::parse_chain(detail::expect_key(lines[4], "chain", 5), 5);
  cert.claims = detail::parse_claims(detail::expect_key(lines[5], "claims", 6), 6);

  const std::string_view payload = lines[6];
  if (payload != kPayloadOmitted) {
    std::vector<Color> colors;
    if (payload.empty()) throw ParseError(7, "empty payload");
    for (std::string_view tok : detail::split(payload, ' ')) {
      const std::uint64_t c = detail::parse_u64(tok, 7, "color");
      if (c < 1 || c > cert.r) {
        throw ParseError(7, "color " + std::to_string(c) + " at position " +
                                std::to_string(colors.size() + 1) + " outside [1, r]");
      }
      colors.push_back(static_cast<Color>(c));
    }
    if (BigInt(colors.size()) != cert.n) {
      throw ParseError(7, "payload has " + std::to_string(colors.size()) + " colors but n=" +
                              cert.n.str());
    }
    cert.colors = std::move(colors);
  }
  const std::string_view sum = detail::expect_key(lines[7], "sha256", 8);
  if (sum.size() != 64 || sum.find_first_not_of("0123456789abcdef") != std::string_view::npos) {
    throw ParseError(8, "sha256 must be 64 lowercase hex digits");
  }
  cert.checksum = std::string(sum);
  return cert;
}

inline Certificate parse_certificate(std::string_view text) {
  std::istringstream is{std::string(text)};
  return read_certificate(is);
}

inline Certificate load_certificate(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open certificate file '" + path + "'");
  return read_certificate(in);
}

inline void save_certificate(const std::string& path, const Certificate& cert) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write certificate file '" + path + "'");
  write_certificate(out, cert);
  if (!out) throw Error("write to '" + path + "' failed");
}

enum class Verdict {
  pass,              // every claim re-verified on the payload
  property_failure,  // some claim does not hold
  checksum_mismatch,
  metadata_only,     // payload omitted; structure checked, claims not re-verified
};

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::property_failure: return "property-failure";
    case Verdict::checksum_mismatch: return "checksum-mismatch";
    case Verdict::metadata_only: return "metadata-only";
  }
  return "?";
}

struct ClaimCheck {
  std::string claim;
  bool holds = false;
  bool by_pigeonhole = false;
  std::optional<Progression> witness;  // counterexample when !holds
};

struct VerificationReport {
  Verdict verdict = Verdict::pass;
  bool checksum_ok = false;
  std::vector<ClaimCheck> claims;
};

// Re-runs every claimed property on the payload. A failed claim outranks a
// checksum mismatch so the counterexample is always reported.
inline VerificationReport verify_certificate(const Certificate& cert) {
  VerificationReport report;
  report.checksum_ok = payload_checksum(cert) == cert.checksum;
  if (cert.k < 2) {
    report.verdict = Verdict::property_failure;
    report.claims.push_back({"k>=2", false, false, std::nullopt});
    return report;
  }
  if (!cert.has_payload()) {
    report.verdict = report.checksum_ok ? Verdict::metadata_only : Verdict::checksum_mismatch;
    return report;
  }
  const Coloring coloring(*cert.colors, cert.r);
  bool all_hold = true;
  if (cert.claims.mono_free) {
    ClaimCheck check{"mono-free", true, false, find_mono_kap(coloring, cert.k)};
    check.holds = !check.witness.has_value();
    all_hold = all_hold && check.holds;
    report.claims.push_back(check);
  }
  if (cert.claims.rainbow_free) {
    ClaimCheck check{"rainbow-free", true, coloring.distinct_colors() < cert.k, std::nullopt};
    if (!check.by_pigeonhole) check.witness = find_rainbow_kap(coloring, cert.k);
    check.holds = !check.witness.has_value();
    all_hold = all_hold && check.holds;
    report.claims.push_back(check);
  }
  if (!all_hold) {
    report.verdict = Verdict::property_failure;
  } else if (!report.checksum_ok) {
    report.verdict = Verdict::checksum_mismatch;
  } else {
    report.verdict = Verdict::pass;
  }
  return report;
}

}  // namespace vdw
