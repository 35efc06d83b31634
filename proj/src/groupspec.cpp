#include "ordscan/groupspec.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace ordscan {

bool quadratic_irreducible(u64 c, u64 d, u64 ell) {
  for (u64 x = 0; x < ell; ++x)
    if ((mulmod(x, x, ell) + mulmod(c, x, ell) + d) % ell == 0) return false;
  return true;
}

Int GroupSpec::order_at_level(unsigned n) const {
  Int l((unsigned long)ell);
  Int units = pow_int(l, n - 1) * (l - 1);
  switch (kind) {
    case SpecKind::GL2Full:
      return pow_int(l, 4 * (n - 1)) * (l * l - 1) * (l * l - l);
    case SpecKind::CartanSplit:
      return units * units;
    case SpecKind::CartanNonsplit:
      return pow_int(l, 2 * (n - 1)) * (l * l - 1);
    case SpecKind::CartanNormalizerSplit:
      return 2 * units * units;
    case SpecKind::CartanNormalizerNonsplit:
      return 2 * pow_int(l, 2 * (n - 1)) * (l * l - 1);
    case SpecKind::GSp: {
      Int sp = pow_int(l, (unsigned long)(n - 1) * (2 * gsp_g * gsp_g + gsp_g));
      for (unsigned j = 1; j <= gsp_g; ++j)
        sp *= pow_int(l, 2 * j - 1) * (pow_int(l, 2 * j) - 1);
      return units * sp;
    }
    case SpecKind::SplitTorusPair:
    case SpecKind::ScalarUnits:
      return units;
    case SpecKind::BigTorusS3:
      return 6 * units;
    case SpecKind::Generated:
      throw std::logic_error("Generated specs have no closed-form order");
  }
  throw std::logic_error("unreachable");
}

std::string GroupSpec::to_string() const {
  std::ostringstream os;
  switch (kind) {
    case SpecKind::GL2Full:
      return "gl2";
    case SpecKind::CartanSplit:
      return "cartan:split";
    case SpecKind::CartanNonsplit:
      os << "cartan:nonsplit:c=" << cns_c << ",d=" << cns_d;
      return os.str();
    case SpecKind::CartanNormalizerSplit:
      return "cartan-normalizer:split";
    case SpecKind::CartanNormalizerNonsplit:
      os << "cartan-normalizer:nonsplit:c=" << cns_c << ",d=" << cns_d;
      return os.str();
    case SpecKind::GSp:
      os << "gsp:" << gsp_g;
      return os.str();
    case SpecKind::SplitTorusPair:
      return "splitpair";
    case SpecKind::BigTorusS3:
      return "bigtorus-s3";
    case SpecKind::ScalarUnits:
      return "scalar";
    case SpecKind::Generated:
      os << "generated[level=" << gen_level << ",gens=" << generators.size() << "]";
      return os.str();
  }
  return "?";
}

namespace {

std::pair<u64, u64> parse_cd(const std::string& s, u64 ell) {
  // "c=..,d=.."
  u64 c = 0, d = 0;
  bool have_c = false, have_d = false;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("bad cartan parameters: " + s);
    std::string k = item.substr(0, eq);
    long long v = std::stoll(item.substr(eq + 1));
    u64 r = (u64)(((v % (long long)ell) + (long long)ell) % (long long)ell);
    if (k == "c") c = r, have_c = true;
    else if (k == "d") d = r, have_d = true;
    else throw std::invalid_argument("bad cartan parameter key: " + k);
  }
  if (!have_c || !have_d) throw std::invalid_argument("cartan:nonsplit needs c= and d=");
  return {c, d};
}

GroupSpec load_generated(const std::string& path, u64 ell) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open generator file: " + path);
  nlohmann::json j;
  in >> j;
  GroupSpec spec;
  spec.kind = SpecKind::Generated;
  spec.ell = ell;
  spec.gen_level = j.value("level", 1u);
  for (const auto& g : j.at("generators")) {
    int d = (int)g.size();
    if (d < 1 || d > 4) throw std::invalid_argument("generator dimension must be 1..4");
    IntMatrix m;
    m.d = d;
    for (int i = 0; i < d; ++i)
      for (int k = 0; k < d; ++k)
        m.a[(size_t)(i * d + k)] = g.at((size_t)i).at((size_t)k).get<long long>();
    spec.generators.push_back(m);
  }
  if (spec.generators.empty()) throw std::invalid_argument("generator file has no generators");
  return spec;
}

}  // namespace

GroupSpec GroupSpec::parse(const std::string& text, u64 ell) {
  GroupSpec spec;
  spec.ell = ell;
  if (text == "gl2") {
    spec.kind = SpecKind::GL2Full;
  } else if (text == "cartan:split") {
    spec.kind = SpecKind::CartanSplit;
  } else if (text.rfind("cartan:nonsplit:", 0) == 0) {
    spec.kind = SpecKind::CartanNonsplit;
    std::tie(spec.cns_c, spec.cns_d) = parse_cd(text.substr(16), ell);
    if (!quadratic_irreducible(spec.cns_c, spec.cns_d, ell))
      throw std::invalid_argument("cartan:nonsplit: x^2+cx+d is reducible mod ell");
  } else if (text == "cartan-normalizer:split") {
    spec.kind = SpecKind::CartanNormalizerSplit;
  } else if (text.rfind("cartan-normalizer:nonsplit:", 0) == 0) {
    spec.kind = SpecKind::CartanNormalizerNonsplit;
    std::tie(spec.cns_c, spec.cns_d) = parse_cd(text.substr(27), ell);
    if (!quadratic_irreducible(spec.cns_c, spec.cns_d, ell))
      throw std::invalid_argument("cartan-normalizer:nonsplit: x^2+cx+d is reducible mod ell");
  } else if (text.rfind("gsp:", 0) == 0) {
    spec.kind = SpecKind::GSp;
    spec.gsp_g = (unsigned)std::stoul(text.substr(4));
    if (spec.gsp_g < 1 || spec.gsp_g > 2)
      throw std::invalid_argument("gsp genus must be 1 or 2 at desk scale");
  } else if (text == "splitpair") {
    spec.kind = SpecKind::SplitTorusPair;
  } else if (text == "bigtorus-s3") {
    spec.kind = SpecKind::BigTorusS3;
  } else if (text == "scalar") {
    spec.kind = SpecKind::ScalarUnits;
  } else if (text.rfind("generated:@", 0) == 0) {
    return load_generated(text.substr(11), ell);
  } else {
    throw std::invalid_argument("unknown group spec: " + text);
  }
  return spec;
}

}  // namespace ordscan
