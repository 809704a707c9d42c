#include "overlat/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace overlat::permgroup {

Permutation::Permutation(int degree) : images_(degree) {
  std::iota(images_.begin(), images_.end(), 0);
}

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  const int n = degree();
  std::vector<char> seen(n, 0);
  for (int x : images_) {
    if (x < 0 || x >= n || seen[x])
      throw std::invalid_argument("permutation images are not a bijection");
    seen[x] = 1;
  }
}

bool Permutation::is_identity() const {
  for (int i = 0; i < degree(); ++i)
    if (images_[i] != i) return false;
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (int i = 0; i < degree(); ++i) inv[images_[i]] = i;
  Permutation p;
  p.images_ = std::move(inv);
  return p;
}

long long Permutation::order() const {
  long long result = 1;
  std::vector<char> seen(images_.size(), 0);
  for (int i = 0; i < degree(); ++i) {
    if (seen[i]) continue;
    long long len = 0;
    for (int j = i; !seen[j]; j = images_[j]) {
      seen[j] = 1;
      ++len;
    }
    result = std::lcm(result, len);
  }
  return result;
}

bool Permutation::is_even() const {
  int transpositions = 0;
  std::vector<char> seen(images_.size(), 0);
  for (int i = 0; i < degree(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (int j = i; !seen[j]; j = images_[j]) {
      seen[j] = 1;
      ++len;
    }
    transpositions += len - 1;
  }
  return transpositions % 2 == 0;
}

int Permutation::min_moved_point() const {
  for (int i = 0; i < degree(); ++i)
    if (images_[i] != i) return i;
  return -1;
}

Permutation compose(const Permutation& a, const Permutation& b) {
  if (a.degree() != b.degree())
    throw std::invalid_argument("compose: degree mismatch");
  std::vector<int> im(a.degree());
  for (int i = 0; i < a.degree(); ++i) im[i] = b(a(i));
  return Permutation(std::move(im));
}

Permutation conjugate(const Permutation& a, const Permutation& g) {
  return compose(compose(g.inverse(), a), g);
}

std::vector<int> orbit(std::span<const Permutation> gens, int point) {
  if (gens.empty()) return {point};
  const int n = gens.front().degree();
  if (point < 0 || point >= n)
    throw std::invalid_argument("orbit: point out of range");
  std::vector<char> in_orbit(n, 0);
  std::vector<int> result{point};
  in_orbit[point] = 1;
  for (size_t head = 0; head < result.size(); ++head) {
    for (const Permutation& g : gens) {
      int img = g(result[head]);
      if (!in_orbit[img]) {
        in_orbit[img] = 1;
        result.push_back(img);
      }
    }
  }
  return result;
}

bool is_transitive(std::span<const Permutation> gens, int degree) {
  if (degree <= 1) return true;
  if (gens.empty()) return false;
  return static_cast<int>(orbit(gens, 0).size()) == degree;
}

namespace {

void skip_ws(const std::string& s, size_t& pos) {
  while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
}

int parse_point(const std::string& s, size_t& pos, int degree, bool one_based) {
  skip_ws(s, pos);
  size_t start = pos;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
  if (pos == start) throw std::invalid_argument("cycle notation: expected a point");
  long v = std::stol(s.substr(start, pos - start));
  if (one_based) v -= 1;
  if (v < 0 || v >= degree)
    throw std::invalid_argument("cycle notation: point out of range");
  return static_cast<int>(v);
}

}  // namespace

Permutation parse_cycles(const std::string& text, int degree, bool one_based) {
  if (degree <= 0) throw std::invalid_argument("parse_cycles: degree must be positive");
  std::vector<int> im(degree);
  std::iota(im.begin(), im.end(), 0);
  std::vector<char> used(degree, 0);

  size_t pos = 0;
  bool saw_cycle = false;
  skip_ws(text, pos);
  while (pos < text.size()) {
    if (text[pos] != '(')
      throw std::invalid_argument("cycle notation: expected '('");
    ++pos;
    saw_cycle = true;
    skip_ws(text, pos);
    std::vector<int> cycle;
    if (pos < text.size() && text[pos] == ')') {
      ++pos;  // "()" empty cycle, allowed for the identity
    } else {
      for (;;) {
        int p = parse_point(text, pos, degree, one_based);
        if (used[p]) throw std::invalid_argument("cycle notation: repeated point");
        used[p] = 1;
        cycle.push_back(p);
        skip_ws(text, pos);
        if (pos >= text.size())
          throw std::invalid_argument("cycle notation: unterminated cycle");
        if (text[pos] == ',') {
          ++pos;
          continue;
        }
        if (text[pos] == ')') {
          ++pos;
          break;
        }
        throw std::invalid_argument("cycle notation: expected ',' or ')'");
      }
    }
    for (size_t i = 0; i < cycle.size(); ++i)
      im[cycle[i]] = cycle[(i + 1) % cycle.size()];
    skip_ws(text, pos);
  }
  if (!saw_cycle) throw std::invalid_argument("cycle notation: empty input");
  return Permutation(std::move(im));
}

std::string print_cycles(const Permutation& p, bool one_based) {
  std::ostringstream out;
  std::vector<char> seen(p.degree(), 0);
  bool any = false;
  for (int i = 0; i < p.degree(); ++i) {
    if (seen[i] || p(i) == i) continue;
    any = true;
    out << '(';
    bool first = true;
    for (int j = i; !seen[j]; j = p(j)) {
      seen[j] = 1;
      if (!first) out << ',';
      out << (one_based ? j + 1 : j);
      first = false;
    }
    out << ')';
  }
  if (!any) return "()";
  return out.str();
}

}  // namespace overlat::permgroup
