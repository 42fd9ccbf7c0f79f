// Copyright 2026 The natlog Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cctype>

#include "natlog/syntax.hpp"

namespace natlog {

CategoryPtr Category::atom(std::string symbol) {
  auto c = std::make_shared<Category>();
  c->symbol_ = std::move(symbol);
  return c;
}

CategoryPtr Category::functor(CategoryPtr result, Slash slash, CategoryPtr argument, Mono mono) {
  auto c = std::make_shared<Category>();
  c->result_ = std::move(result);
  c->argument_ = std::move(argument);
  c->slash_ = slash;
  c->mono_ = mono;
  return c;
}

bool Category::same_shape(const Category& other) const {
  if (is_atomic() != other.is_atomic()) return false;
  if (is_atomic()) return symbol_ == other.symbol_;
  return slash_ == other.slash_ && result_->same_shape(*other.result_) &&
         argument_->same_shape(*other.argument_);
}

bool Category::operator==(const Category& other) const {
  if (is_atomic() != other.is_atomic()) return false;
  if (is_atomic()) return symbol_ == other.symbol_;
  return slash_ == other.slash_ && mono_ == other.mono_ && *result_ == *other.result_ &&
         *argument_ == *other.argument_;
}

std::string Category::str() const {
  if (is_atomic()) return symbol_;
  auto wrap = [](const Category& c) { return c.is_atomic() ? c.str() : "(" + c.str() + ")"; };
  std::string out = wrap(*result_);
  out += slash_ == Slash::Forward ? '/' : '\\';
  out += wrap(*argument_);
  out += '[';
  out += mono_sign(mono_);
  out += ']';
  return out;
}

namespace {

class CategoryReader {
 public:
  explicit CategoryReader(std::string_view text) : text_(text) {}

  CategoryPtr read_all() {
    auto c = read_category();
    skip_space();
    if (pos_ != text_.size()) fail("trailing input");
    return c;
  }

 private:
  CategoryPtr read_category() {
    auto left = read_primary();
    for (;;) {
      skip_space();
      if (pos_ >= text_.size()) break;
      char c = text_[pos_];
      if (c != '/' && c != '\\') break;
      ++pos_;
      auto right = read_primary();
      Mono mono = Mono::UpSlot;
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == '[') {
        if (pos_ + 2 >= text_.size() || text_[pos_ + 2] != ']') fail("bad slot mark");
        auto m = parse_mono_sign(text_[pos_ + 1]);
        if (!m) fail("bad slot mark");
        mono = *m;
        pos_ += 3;
      }
      left = Category::functor(left, c == '/' ? Slash::Forward : Slash::Backward, right, mono);
    }
    return left;
  }

  CategoryPtr read_primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end");
    if (text_[pos_] == '(') {
      ++pos_;
      auto c = read_category();
      skip_space();
      if (pos_ >= text_.size() || text_[pos_] != ')') fail("expected ')'");
      ++pos_;
      return c;
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected atomic category");
    return Category::atom(std::string(text_.substr(start, pos_ - start)));
  }

  void skip_space() {
    while (pos_ < text_.size() && text_[pos_] == ' ') ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw SchemaError("category '" + std::string(text_) + "': " + what + " at offset " +
                      std::to_string(pos_));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

CategoryPtr parse_category(std::string_view text) { return CategoryReader(text).read_all(); }

namespace cat {

CategoryPtr S() {
  static const CategoryPtr c = Category::atom("S");
  return c;
}
CategoryPtr NP() {
  static const CategoryPtr c = Category::atom("NP");
  return c;
}
CategoryPtr N() {
  static const CategoryPtr c = Category::atom("N");
  return c;
}
CategoryPtr VP() {
  static const CategoryPtr c = Category::functor(S(), Slash::Backward, NP());
  return c;
}
CategoryPtr subject_gq(Mono scope) { return Category::functor(S(), Slash::Forward, VP(), scope); }
CategoryPtr object_gq(const CategoryPtr& x, Mono scope) {
  return Category::functor(x, Slash::Backward, Category::functor(x, Slash::Forward, NP()),
                           scope);
}

}  // namespace cat

bool is_quantifier_shape(const Category& c) {
  if (c.is_atomic()) return false;
  if (c.slash() == Slash::Forward) return c.same_shape(*cat::subject_gq(Mono::UpSlot));
  const auto& arg = *c.argument();
  return !arg.is_atomic() && arg.slash() == Slash::Forward && arg.argument()->same_shape(*cat::NP()) &&
         arg.result()->same_shape(*c.result());
}

}  // namespace natlog
