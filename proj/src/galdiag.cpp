#include "ordscan/galdiag.hpp"

#include "ordscan/matgroups.hpp"
#include "ordscan/primes.hpp"

namespace ordscan {

SquareTestReport rational_square_tests(const std::vector<Rat>& values) {
  SquareTestReport rep;
  rep.values = values;
  for (const auto& q : values) rep.is_square.push_back(is_rational_square(q));
  return rep;
}

FrobeniusReport frobenius_statistics(const WeierstrassQ& E, u64 ell, unsigned n, u64 bound) {
  FrobeniusReport rep;
  rep.ell = ell;
  rep.level = n;
  rep.bound = bound;
  u64 modn = 1;
  for (unsigned i = 0; i < n; ++i) modn *= ell;
  if (modn > 16) throw std::invalid_argument("frobenius_statistics: ell^n <= 16");
  if (bound > 1000000) throw std::invalid_argument("frobenius_statistics: bound <= 1e6");

  // exact reference distribution: (trace, det) classes of GL2(Z/ell^n)
  GroupSpec spec;
  spec.kind = SpecKind::GL2Full;
  spec.ell = ell;
  auto elems = enumerate_group(spec, n);
  for (const auto& m : elems) {
    u64 tr = addmod(m.at(0, 0), m.at(1, 1), modn);
    u64 det = mat_det(m);
    rep.reference[{tr, det}] += 1;
  }

  for (u64 p : sieve_primes(bound)) {
    if (p == 2) continue;  // trace sweep uses the odd-p model
    auto Er = reduce_curve(E, p);
    if (!Er) continue;
    i64 ap = ec_trace(*Er);
    u64 t = (u64)(((ap % (i64)modn) + (i64)modn) % (i64)modn);
    rep.empirical[{t, p % modn}] += 1;
    ++rep.samples;
  }
  if (rep.samples < 25) {
    rep.verdict = FrobVerdict::LowSample;
    return rep;
  }
  // total variation against the reference
  double tv = 0;
  Int order((unsigned long)elems.size());
  std::map<std::pair<u64, u64>, bool> keys;
  for (const auto& [k, v] : rep.reference) keys[k] = true;
  for (const auto& [k, v] : rep.empirical) keys[k] = true;
  for (const auto& [k, unused] : keys) {
    double emp = rep.empirical.count(k) ? (double)rep.empirical.at(k) / (double)rep.samples : 0.0;
    double ref = rep.reference.count(k)
                     ? make_rat(rep.reference.at(k), order).get_d()
                     : 0.0;
    tv += std::abs(emp - ref);
  }
  rep.tv_distance = tv / 2;
  rep.verdict = bound < 100 ? FrobVerdict::LowSample
                            : (rep.tv_distance < 0.05 ? FrobVerdict::ConsistentWithSurjective
                                                      : FrobVerdict::Inconsistent);
  return rep;
}

}  // namespace ordscan
