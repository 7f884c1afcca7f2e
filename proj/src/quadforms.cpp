#include "cartan/quadforms.hpp"

#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace cartan {

namespace {

long mod4(long v) { return ((v % 4) + 4) % 4; }

bool squarefree(long m) {
  m = std::labs(m);
  for (long p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      m /= p;
      if (m % p == 0) return false;
    }
  }
  return true;
}

bool fundamental(long d) {
  if (mod4(d) == 1) return squarefree(d);
  long m = d / 4;
  long r = mod4(m);
  return (r == 2 || r == 3) && squarefree(m);
}

} // namespace

Discriminant::Discriminant(long value) : value_(value) {
  if (value >= 0 || (mod4(value) != 0 && mod4(value) != 1))
    throw std::invalid_argument("Discriminant: need value < 0 and value = 0,1 mod 4");
  fundamental_ = fundamental(value);
}

std::vector<QuadForm> reduced_forms(const Discriminant& D) {
  const long d = D.value();
  std::vector<QuadForm> forms;
  for (long a = 1; 4 * a * a <= -d + a * a; ++a) { // a <= sqrt(|d|/3) <=> 3a^2 <= -d
    for (long b = -a + 1; b <= a; ++b) {
      long num = b * b - d;
      if (num % (4 * a) != 0) continue;
      long c = num / (4 * a);
      if (c < a) continue;
      if (b < 0 && (a == c || -b == a)) continue; // normalization: b >= 0 on the boundary
      if (std::gcd(std::gcd(std::labs(a), std::labs(b)), std::labs(c)) != 1) continue;
      forms.push_back({a, b, c});
    }
  }
  // lexicographic by (a, b); the scan already emits a ascending, b ascending
  return forms;
}

std::vector<QuadForm> reduced_forms(long D) { return reduced_forms(Discriminant(D)); }

long class_number(const Discriminant& D) {
  return static_cast<long>(reduced_forms(D).size());
}

long class_number(long D) { return class_number(Discriminant(D)); }

std::map<long, std::vector<long>> discriminant_table(int h_max, long ceiling) {
  if (h_max < 1 || h_max > 6) throw std::invalid_argument("discriminant_table: need 1 <= h_max <= 6");
  std::map<long, std::vector<long>> table;
  for (int h = 1; h <= h_max; ++h) table[h];
  for (long v = -3; v >= -ceiling; --v) {
    long r = mod4(v);
    if (r != 0 && r != 1) continue;
    if (!fundamental(v)) continue;
    long h = class_number(Discriminant(v));
    if (h <= h_max) table[h].push_back(v);
  }
  return table;
}

} // namespace cartan
