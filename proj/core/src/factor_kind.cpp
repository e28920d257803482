#include "toricsplit/factor_kind.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "toricsplit/error.hpp"

namespace toricsplit {

FactorKind FactorKind::pq(int p, int q) {
  if (!(p >= q && q >= 0 && p + q >= 1))
    throw DomainError("PQ(" + std::to_string(p) + "," + std::to_string(q) + ") requires p >= q >= 0 and p + q >= 1");
  return FactorKind(Tag::PQ, p, q, 0);
}

FactorKind FactorKind::diag(int r) {
  if (r < 1) throw DomainError("DIAG(" + std::to_string(r) + ") requires r >= 1");
  return FactorKind(Tag::Diag, 0, 0, r);
}

int FactorKind::b2() const noexcept {
  switch (tag_) {
    case Tag::ProjLine: return 1;
    case Tag::PQ: return p_ + q_;
    case Tag::Diag: return 2 * r_;
    case Tag::FourSphere: return 0;
  }
  return 0;
}

std::string FactorKind::to_string() const {
  switch (tag_) {
    case Tag::ProjLine: return "CP1";
    case Tag::PQ: return "PQ(" + std::to_string(p_) + "," + std::to_string(q_) + ")";
    case Tag::Diag: return "DIAG(" + std::to_string(r_) + ")";
    case Tag::FourSphere: return "S4";
  }
  return "?";
}

ProductManifold::ProductManifold(std::vector<FactorKind> factors) : factors_(std::move(factors)) {
  std::sort(factors_.begin(), factors_.end());
}

int ProductManifold::complex_dim() const noexcept {
  return std::accumulate(factors_.begin(), factors_.end(), 0,
                         [](int acc, const FactorKind& k) { return acc + k.complex_dim(); });
}

int ProductManifold::b2() const noexcept {
  return std::accumulate(factors_.begin(), factors_.end(), 0, [](int acc, const FactorKind& k) { return acc + k.b2(); });
}

std::size_t ProductManifold::count(const FactorKind& k) const {
  return static_cast<std::size_t>(std::count(factors_.begin(), factors_.end(), k));
}

ProductManifold ProductManifold::operator*(const ProductManifold& o) const {
  auto all = factors_;
  all.insert(all.end(), o.factors_.begin(), o.factors_.end());
  return ProductManifold(std::move(all));
}

std::string ProductManifold::to_string() const {
  if (factors_.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < factors_.size();) {
    std::size_t j = i;
    while (j < factors_.size() && factors_[j] == factors_[i]) ++j;
    if (i) os << " * ";
    os << factors_[i].to_string();
    if (j - i > 1) os << '^' << (j - i);
    i = j;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Descriptor parser

namespace {

class DescriptorParser {
 public:
  explicit DescriptorParser(std::string_view text) : text_(text) {}

  ProductManifold parse() {
    skip_ws();
    if (at_end()) return {};
    if (peek() == '1') {
      const auto save = pos_;
      ++pos_;
      skip_ws();
      if (at_end()) return {};
      pos_ = save;
    }
    std::vector<FactorKind> out;
    while (true) {
      parse_term(out);
      skip_ws();
      if (at_end()) break;
      expect('*', "'*' between terms");
    }
    return ProductManifold(std::move(out));
  }

 private:
  void parse_term(std::vector<FactorKind>& out) {
    skip_ws();
    const auto start = pos_;
    std::string word;
    while (!at_end() && std::isalnum(static_cast<unsigned char>(peek())))
      word.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(text_[pos_++]))));
    if (word.empty()) fail("expected a factor (CP1, PQ(p,q), DIAG(r), S4)", start);

    FactorKind kind = FactorKind::four_sphere();
    try {
      if (word == "CP1") {
        kind = FactorKind::proj_line();
      } else if (word == "S4") {
        kind = FactorKind::four_sphere();
      } else if (word == "PQ") {
        expect('(', "'(' after PQ");
        const int p = number();
        expect(',', "',' in PQ(p,q)");
        const int q = number();
        expect(')', "')' closing PQ(p,q)");
        kind = FactorKind::pq(p, q);
      } else if (word == "DIAG") {
        expect('(', "'(' after DIAG");
        const int r = number();
        expect(')', "')' closing DIAG(r)");
        kind = FactorKind::diag(r);
      } else {
        fail("unknown factor '" + std::string(text_.substr(start, pos_ - start)) + "'", start);
      }
    } catch (const DomainError& e) {
      fail(e.what(), start);
    }

    int mult = 1;
    skip_ws();
    if (!at_end() && peek() == '^') {
      ++pos_;
      const auto at = pos_;
      mult = number();
      if (mult < 1) fail("exponent must be at least 1", at);
    }
    out.insert(out.end(), static_cast<std::size_t>(mult), kind);
  }

  int number() {
    skip_ws();
    const auto start = pos_;
    bool negative = false;
    if (!at_end() && peek() == '-') {
      negative = true;
      ++pos_;
    }
    std::int64_t v = 0;
    std::size_t digits = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (text_[pos_++] - '0');
      if (v > 1'000'000) fail("number too large", start);
      ++digits;
    }
    if (digits == 0) fail("expected an integer", start);
    return static_cast<int>(negative ? -v : v);
  }

  void expect(char c, const char* what) {
    skip_ws();
    if (at_end() || peek() != c) fail(std::string("expected ") + what, pos_);
    ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
    std::string found = at < text_.size() ? "'" + std::string(1, text_[at]) + "'" : "end of input";
    throw ParseError("descriptor position " + std::to_string(at) + ": " + msg + " (found " + found + ")", at);
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

ProductManifold parse_product(std::string_view text) { return DescriptorParser(text).parse(); }

}  // namespace toricsplit
