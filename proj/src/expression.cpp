#include "multiskein/expression.hpp"

#include <cctype>

namespace multiskein {

namespace {

class Parser {
 public:
  Parser(const std::string& text, const LaurentSpacePtr& space) : s_(text), space_(space) {}

  Scaled<Laurent> parse() {
    Scaled<Laurent> v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ExpressionError("expression \"" + s_ + "\" at " + std::to_string(pos_) + ": " + msg);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Scaled<Laurent> one() const { return Scaled<Laurent>(Laurent::constant(space_, 1)); }

  Scaled<Laurent> expr() {
    Scaled<Laurent> v = term();
    for (;;) {
      if (eat('+')) {
        v = v + term();
      } else if (eat('-')) {
        v = v - term();
      } else {
        return v;
      }
    }
  }

  Scaled<Laurent> term() {
    Scaled<Laurent> v = unary();
    for (;;) {
      if (eat('*')) {
        v = v * unary();
      } else if (eat('/')) {
        std::size_t at = pos_;
        Scaled<Laurent> d = unary();
        auto inv = d.inverse();
        if (!inv) {
          pos_ = at;
          fail("division by a non-unit");
        }
        v = v * *inv;
      } else {
        return v;
      }
    }
  }

  Scaled<Laurent> unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  Scaled<Laurent> power() {
    Scaled<Laurent> base = primary();
    if (!eat('^')) return base;
    skip();
    bool neg = false;
    if (eat('-')) neg = true;
    skip();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected integer exponent");
    int e = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      e = e * 10 + (s_[pos_++] - '0');
      if (e > 1000) fail("exponent too large");
    }
    if (neg) {
      auto inv = base.inverse();
      if (!inv) fail("negative power of a non-unit");
      base = *inv;
    }
    Scaled<Laurent> r = one();
    for (int k = 0; k < e; ++k) r = r * base;
    return r;
  }

  Scaled<Laurent> primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Scaled<Laurent> v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::int64_t n = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        n = checked_add(checked_mul(n, 10), s_[pos_++] - '0');
      }
      return Scaled<Laurent>(Laurent::constant(space_, n));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '\''))
        ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      if (space_->find(name) < 0) {
        pos_ = start;
        fail("undeclared generator '" + name + "'");
      }
      return Scaled<Laurent>(Laurent::generator(space_, name));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string s_;
  LaurentSpacePtr space_;
  std::size_t pos_ = 0;
};

}  // namespace

Scaled<Laurent> parse_expression(const std::string& text, const LaurentSpacePtr& space) {
  return Parser(text, space).parse();
}

}  // namespace multiskein
