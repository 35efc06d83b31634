#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "ordscan/matgroups.hpp"

using namespace ordscan;

namespace {

GroupSpec mk(SpecKind k, u64 ell, unsigned g = 2) {
  GroupSpec s;
  s.kind = k;
  s.ell = ell;
  s.gsp_g = g;
  if (k == SpecKind::CartanNormalizerNonsplit || k == SpecKind::CartanNonsplit) {
    if (ell == 2) s.cns_c = 1, s.cns_d = 1;
    else s.cns_c = 0, s.cns_d = 1;
  }
  return s;
}

// all per-class counts within 5 sigma of uniform
void check_uniform(const GroupSpec& spec, unsigned n, u64 samples, u64 seed) {
  auto elems = enumerate_group(spec, n);
  std::map<u64, u64> index;
  for (const auto& m : elems) index[m.key()] = 0;
  REQUIRE(index.size() == elems.size());
  HaarSampler sampler(spec, n);
  Rng rng(seed);
  for (u64 i = 0; i < samples; ++i) {
    auto m = sampler.sample(rng);
    auto it = index.find(m.key());
    REQUIRE(it != index.end());
    it->second++;
  }
  double p = 1.0 / (double)elems.size();
  double mean = (double)samples * p;
  double sigma = std::sqrt((double)samples * p * (1 - p));
  if (mean >= 25.0) {
    // per-class gaussian bound is sound once the class means are large
    for (const auto& [k, cnt] : index) {
      double dev = std::abs((double)cnt - mean);
      CHECK(dev <= 5.0 * sigma);
    }
  } else {
    // sparse counts: aggregate chi-square statistic within 5 sigma of its
    // chi-square(k-1) mean
    double chi2 = 0;
    for (const auto& [k, cnt] : index) {
      double d = (double)cnt - mean;
      chi2 += d * d / mean;
    }
    double dof = (double)elems.size() - 1;
    CHECK(std::abs(chi2 - dof) <= 5.0 * std::sqrt(2.0 * dof));
  }
}

}  // namespace

TEST_CASE("haar sample lands in the group at level 1") {
  GroupSpec spec = mk(SpecKind::GL2Full, 2);
  auto elems = enumerate_group(spec, 1);
  std::set<u64> keys;
  for (const auto& m : elems) keys.insert(m.key());
  for (u64 s = 0; s < 50; ++s) CHECK(keys.count(haar_sample(spec, 1, s).key()) == 1);
}

TEST_CASE("haar uniformity: GL2 mod 9, 5-sigma per class") {
  check_uniform(mk(SpecKind::GL2Full, 3), 2, 100000, 20240601);
}

TEST_CASE("haar uniformity: small specs") {
  check_uniform(mk(SpecKind::CartanNormalizerSplit, 3), 2, 60000, 7);
  check_uniform(mk(SpecKind::CartanNormalizerNonsplit, 2), 2, 60000, 8);
  check_uniform(mk(SpecKind::BigTorusS3, 2), 3, 60000, 9);
  check_uniform(mk(SpecKind::ScalarUnits, 5), 2, 60000, 10);
}

TEST_CASE("haar GSp(4) mod 4: identity class frequency and membership") {
  // kernel of GSp_4(Z/4) -> GSp_4(F_2) is the 11-dim lie algebra over F_2,
  // so the fiber over the identity has probability 1/720 in total
  GroupSpec spec = mk(SpecKind::GSp, 2, 2);
  HaarSampler sampler(spec, 2);
  Rng rng(99);
  u64 samples = 200000;
  u64 hits = 0;
  for (u64 i = 0; i < samples; ++i) {
    auto m = sampler.sample(rng);
    bool is_id_mod2 = true;
    for (int r = 0; r < 4 && is_id_mod2; ++r)
      for (int c = 0; c < 4; ++c)
        if ((m.at(r, c) & 1) != (u64)(r == c ? 1 : 0)) {
          is_id_mod2 = false;
          break;
        }
    if (is_id_mod2) ++hits;
  }
  double p = 1.0 / 720.0;
  double mean = (double)samples * p;
  double sigma = std::sqrt((double)samples * p * (1 - p));
  CHECK(std::abs((double)hits - mean) <= 5 * sigma);
  for (u64 i = 0; i < 500; ++i) CHECK(is_gsp_member(sampler.sample(rng)));
}

TEST_CASE("haar GSp(4) mod 4: per-class uniformity") {
  check_uniform(mk(SpecKind::GSp, 2, 2), 2, 3000000, 1234);
}

TEST_CASE("haar GSp(4) mod 16 samples are members") {
  GroupSpec spec = mk(SpecKind::GSp, 2, 2);
  HaarSampler sampler(spec, 4);
  Rng rng(5);
  for (int i = 0; i < 2000; ++i) {
    auto m = sampler.sample(rng);
    CHECK(is_gsp_member(m));
  }
}

TEST_CASE("generated specs are rejected") {
  GroupSpec g;
  g.kind = SpecKind::Generated;
  g.ell = 2;
  CHECK_THROWS_AS(haar_sample(g, 1, 1), UnsupportedSpec);
}

TEST_CASE("haar at level 1 reproduces the enumeration distribution") {
  check_uniform(mk(SpecKind::GL2Full, 3), 1, 60000, 404);
  check_uniform(mk(SpecKind::GSp, 2, 2), 1, 400000, 405);
}
