#include "stabnet/weyl.hpp"

#include <algorithm>
#include <stdexcept>

namespace stabnet {

bool WeylOp::is_identity_vector() const {
  return std::all_of(x.begin(), x.end(), [](uint32_t v) { return v == 0; }) &&
         std::all_of(z.begin(), z.end(), [](uint32_t v) { return v == 0; });
}

WeylOp WeylOp::identity(uint32_t p, size_t n) {
  WeylOp w;
  w.p = p;
  w.x.assign(n, 0);
  w.z.assign(n, 0);
  return w;
}

WeylOp WeylOp::make(uint32_t p, std::vector<uint32_t> x,
                    std::vector<uint32_t> z, uint32_t phase) {
  if (x.size() != z.size())
    throw std::invalid_argument("WeylOp: x and z must have equal length");
  WeylOp w;
  w.p = p;
  w.phase = phase % phase_modulus(p);
  w.x = std::move(x);
  w.z = std::move(z);
  for (auto& v : w.x) v %= p;
  for (auto& v : w.z) v %= p;
  return w;
}

uint32_t symplectic_product(std::span<const uint32_t> a,
                            std::span<const uint32_t> b, uint32_t p) {
  if (a.size() != b.size() || a.size() % 2 != 0)
    throw std::invalid_argument("symplectic_product: length mismatch");
  size_t n = a.size() / 2;
  uint64_t pos = 0, neg = 0;
  for (size_t i = 0; i < n; ++i) {
    pos += uint64_t(a[i] % p) * (b[n + i] % p);
    neg += uint64_t(a[n + i] % p) * (b[i] % p);
  }
  return static_cast<uint32_t>(((pos % p) + p - (neg % p)) % p);
}

uint32_t symplectic_product(const WeylOp& a, const WeylOp& b) {
  if (a.n() != b.n() || a.p != b.p)
    throw std::invalid_argument("symplectic_product: operator mismatch");
  uint64_t pos = 0, neg = 0;
  for (size_t i = 0; i < a.n(); ++i) {
    pos += uint64_t(a.x[i]) * b.z[i];
    neg += uint64_t(a.z[i]) * b.x[i];
  }
  uint32_t p = a.p;
  return static_cast<uint32_t>(((pos % p) + p - (neg % p)) % p);
}

WeylOp multiply(const WeylOp& a, const WeylOp& b) {
  if (a.p != b.p || a.n() != b.n())
    throw std::invalid_argument("WeylOp multiply: dimension mismatch");
  uint32_t p = a.p;
  size_t n = a.n();
  WeylOp out;
  out.p = p;
  out.x.resize(n);
  out.z.resize(n);
  if (p == 2) {
    // i^pa W(xa,za) i^pb W(xb,zb)
    //   = i^{pa+pb+xa.za+xb.zb+2 za.xb-(xa^xb).(za^zb)} W(xa^xb, za^zb)
    uint64_t ph = a.phase + b.phase;
    for (size_t i = 0; i < n; ++i) {
      uint32_t xa = a.x[i], za = a.z[i], xb = b.x[i], zb = b.z[i];
      ph += xa * za + xb * zb + 2 * za * xb;
      uint32_t xs = xa ^ xb, zs = za ^ zb;
      ph += 4 - ((xs * zs) & 3);
      out.x[i] = xs;
      out.z[i] = zs;
    }
    out.phase = static_cast<uint32_t>(ph % 4);
  } else {
    // w^pa W(a) w^pb W(b) = w^{pa+pb+xb.za+(1/2)(xa.zb+xb.za)} W(a+b)
    PrimeField f(p);
    uint32_t inv2 = f.inv(2);
    uint64_t s = 0, t = 0;
    for (size_t i = 0; i < n; ++i) {
      s += uint64_t(a.x[i]) * b.z[i];
      t += uint64_t(b.x[i]) * a.z[i];
      out.x[i] = (a.x[i] + b.x[i]) % p;
      out.z[i] = (a.z[i] + b.z[i]) % p;
    }
    uint64_t ph = a.phase + b.phase + t % p +
                  uint64_t(inv2) * ((s + t) % p) % p;
    out.phase = static_cast<uint32_t>(ph % p);
  }
  return out;
}

WeylOp power(const WeylOp& a, uint64_t e) {
  // Every operator satisfies a^4 = I for p=2 and a^p = I for odd p.
  uint64_t reps = a.p == 2 ? e % 4 : e % a.p;
  WeylOp acc = WeylOp::identity(a.p, a.n());
  for (uint64_t i = 0; i < reps; ++i) acc = multiply(acc, a);
  return acc;
}

WeylOp inverse(const WeylOp& a) {
  WeylOp out;
  out.p = a.p;
  out.x.resize(a.n());
  out.z.resize(a.n());
  for (size_t i = 0; i < a.n(); ++i) {
    out.x[i] = (a.p - a.x[i]) % a.p;
    out.z[i] = (a.p - a.z[i]) % a.p;
  }
  out.phase = 0;
  WeylOp prod = multiply(out, a);  // phase_unit^{prod.phase} * I
  uint32_t m = phase_modulus(a.p);
  out.phase = (m - prod.phase) % m;
  return out;
}

WeylOp partial_transpose(const WeylOp& a, std::span<const size_t> subset) {
  WeylOp out = a;
  uint32_t m = phase_modulus(a.p);
  uint64_t q = 0;
  for (size_t i : subset) {
    if (i >= a.n()) throw std::out_of_range("partial_transpose: bad index");
    q += uint64_t(a.x[i]) * a.z[i];
    out.x[i] = (a.p - a.x[i]) % a.p;
  }
  // W(x,z)^T = w^{-2 x.z} W(-x,z) for odd p; (-1)^{x.z} W(x,z) for p=2.
  // Both cases are phase - 2q in the respective modulus.
  uint64_t corr = (2 * q) % m;
  out.phase = static_cast<uint32_t>((a.phase + m - corr) % m);
  return out;
}

bool stabilizer_eligible_phase(const WeylOp& a) {
  if (a.p != 2) return true;
  return a.phase % 2 == 0;
}

}  // namespace stabnet
