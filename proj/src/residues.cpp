#include "lochmf/residues.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "lochmf/error.hpp"

namespace lochmf {

namespace {

using i64 = std::int64_t;
using u128 = unsigned __int128;

i64 mulmod(i64 a, i64 b, i64 m) { return static_cast<i64>((static_cast<u128>(a) * b) % m); }

i64 powmod(i64 b, i64 e, i64 m) {
  i64 r = 1 % m;
  b %= m;
  while (e > 0) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

i64 modinv(i64 a, i64 m) {
  i64 g = m, x = 0, x1 = 1, a1 = a % m;
  if (a1 < 0) a1 += m;
  while (a1 != 0) {
    const i64 q = g / a1;
    std::tie(g, a1) = std::make_pair(a1, g - q * a1);
    std::tie(x, x1) = std::make_pair(x1, x - q * x1);
  }
  if (g != 1) throw DomainError("modinv: not invertible");
  return ((x % m) + m) % m;
}

// sqrt of n mod odd prime p, n a nonzero QR
i64 tonelli(i64 n, i64 p) {
  n %= p;
  if (p % 4 == 3) return powmod(n, (p + 1) / 4, p);
  i64 q = p - 1, s = 0;
  while (q % 2 == 0) q /= 2, ++s;
  i64 z = 2;
  while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
  i64 m = s, c = powmod(z, q, p), t = powmod(n, q, p), r = powmod(n, (q + 1) / 2, p);
  while (t != 1) {
    i64 i = 0, tt = t;
    while (tt != 1) tt = mulmod(tt, tt, p), ++i;
    i64 b = c;
    for (i64 j = 0; j < m - i - 1; ++j) b = mulmod(b, b, p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  return r;
}

struct PrimePowerRoots {
  i64 modulus;
  std::vector<i64> roots;
};

// roots of x^2 = D mod p^e, x mod p^e (p odd)
PrimePowerRoots odd_roots(i64 D, i64 p, int e) {
  i64 q = 1;
  for (int i = 0; i < e; ++i) q *= p;
  std::vector<i64> out;
  const i64 Dm = ((D % q) + q) % q;
  if (D % p != 0) {
    const i64 Dp = Dm % p;
    if (powmod(Dp, (p - 1) / 2, p) != 1) return {q, {}};
    i64 x = tonelli(Dp, p), pk = p;
    for (int j = 1; j < e; ++j) {
      pk *= p;
      const i64 fx = ((mulmod(x, x, pk) - Dm % pk) % pk + pk) % pk;
      x = ((x - mulmod(fx, modinv(2 * x % pk, pk), pk)) % pk + pk) % pk;
    }
    out = {x, (q - x) % q};
    if (out[0] == out[1]) out.pop_back();
  } else {
    for (i64 x = 0; x < q; ++x)
      if (mulmod(x, x, q) == Dm) out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  return {q, out};
}

// b mod 2^{e+1} with b^2 = D mod 2^{e+2}
PrimePowerRoots two_roots(i64 D, int e) {
  const i64 m = i64{1} << (e + 1), M = i64{1} << (e + 2);
  const i64 Dm = ((D % M) + M) % M;
  std::vector<i64> out;
  for (i64 x = 0; x < m; ++x)
    if (mulmod(x, x, M) == Dm) out.push_back(x);
  return {m, out};
}

std::vector<i64> crt_merge(const std::vector<i64>& r1, i64 m1, const std::vector<i64>& r2, i64 m2) {
  std::vector<i64> out;
  if (r1.empty() || r2.empty()) return out;
  const i64 inv = modinv(m1 % m2, m2);
  out.reserve(r1.size() * r2.size());
  for (i64 x : r1)
    for (i64 y : r2) {
      const i64 d = (((y - x) % m2) + m2) % m2;
      out.push_back(x + m1 * mulmod(d, inv, m2));
    }
  return out;
}

}  // namespace

i64 count_roots_brute(i64 D, i64 a) {
  i64 n = 0;
  const i64 M = 4 * a;
  const i64 Dm = ((D % M) + M) % M;
  for (i64 b = 0; b < 2 * a; ++b)
    if (mulmod(b, b, M) == Dm) ++n;
  return n;
}

ResidueTable::ResidueTable(i64 D, i64 a_max) : D_(D), a_max_(a_max) {
  if (a_max < 1) throw DomainError("ResidueTable: a_max must be >= 1");
  std::vector<i64> spf(a_max + 1, 0);
  for (i64 i = 2; i <= a_max; ++i)
    if (spf[i] == 0)
      for (i64 j = i; j <= a_max; j += i)
        if (spf[j] == 0) spf[j] = i;
  std::map<std::pair<i64, int>, PrimePowerRoots> memo;
  auto cached = [&](i64 p, int e) -> const PrimePowerRoots& {
    auto key = std::make_pair(p, e);
    auto it = memo.find(key);
    if (it == memo.end()) it = memo.emplace(key, p == 2 ? two_roots(D, e) : odd_roots(D, p, e)).first;
    return it->second;
  };
  offsets_.assign(a_max + 2, 0);
  for (i64 a = 1; a <= a_max; ++a) {
    i64 n = a;
    int e2 = 0;
    while (n % 2 == 0) n /= 2, ++e2;
    const auto& r2 = cached(2, e2);
    std::vector<i64> cur = r2.roots;
    i64 mod = r2.modulus;
    while (n > 1 && !cur.empty()) {
      const i64 p = spf[n];
      int e = 0;
      while (n % p == 0) n /= p, ++e;
      const auto& rp = cached(p, e);
      cur = crt_merge(cur, mod, rp.roots, rp.modulus);
      mod *= rp.modulus;
    }
    if (n > 1) cur.clear();
    std::sort(cur.begin(), cur.end());
    offsets_[a + 1] = offsets_[a] + static_cast<i64>(cur.size());
    flat_.insert(flat_.end(), cur.begin(), cur.end());
  }
  offsets_[a_max + 1] = static_cast<i64>(flat_.size());
}

std::shared_ptr<const ResidueTable> ResidueTable::get(i64 D, i64 a_max) {
  static std::mutex mu;
  static std::map<i64, std::shared_ptr<const ResidueTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[D];
  if (!slot || slot->a_max() < a_max) {
    const i64 grow = slot ? std::max(a_max, 2 * slot->a_max()) : a_max;
    slot = std::make_shared<const ResidueTable>(D, grow);
  }
  return slot;
}

}  // namespace lochmf
