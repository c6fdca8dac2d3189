#include "modcol/io.hpp"

#include "modcol/error.hpp"

#include <httplib.h>
#include <json.hpp>

#include <cctype>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace modcol {

namespace {

[[noreturn]] void parse_fail(size_t lineno, const std::string& msg) {
  throw ParseError("line " + std::to_string(lineno + 1) + ": " + msg);
}

struct Line {
  std::string text;
  size_t offset = 0; // byte offset of the line start in the source text
};

std::vector<Line> split_lines(const std::string& text) {
  std::vector<Line> out;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) {
      if (pos < text.size()) out.push_back({text.substr(pos), pos});
      break;
    }
    out.push_back({text.substr(pos, nl - pos), pos});
    pos = nl + 1;
  }
  return out;
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

bool is_blank(const std::string& s) {
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) return false;
  return true;
}

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

Rational parse_rational_at(const std::string& s, size_t lineno) {
  try {
    return rational_from_string(s);
  } catch (const std::exception&) {
    parse_fail(lineno, "malformed rational '" + s + "'");
  }
}

long parse_long_at(const std::string& s, size_t lineno) {
  try {
    size_t used = 0;
    long v = std::stol(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    parse_fail(lineno, "malformed integer '" + s + "'");
  }
}

// "n: num/den" or "n: [c0,c1,...]"
bool looks_like_coeff_line(const std::string& s) {
  size_t i = 0;
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  return i < s.size() && s[i] == ':';
}

std::pair<long, std::vector<Rational>> parse_coeff_line(const std::string& s, size_t lineno) {
  size_t colon = s.find(':');
  long n = parse_long_at(s.substr(0, colon), lineno);
  std::string rest = s.substr(colon + 1);
  size_t a = rest.find_first_not_of(" \t");
  if (a == std::string::npos) parse_fail(lineno, "missing coefficient value");
  rest = rest.substr(a);
  std::vector<Rational> value;
  if (rest[0] == '[') {
    size_t close = rest.find(']');
    if (close == std::string::npos) parse_fail(lineno, "unterminated coefficient vector");
    std::string body = rest.substr(1, close - 1);
    std::istringstream is(body);
    std::string tok;
    while (std::getline(is, tok, ',')) value.push_back(parse_rational_at(tok, lineno));
    if (value.empty()) parse_fail(lineno, "empty coefficient vector");
  } else {
    value.push_back(parse_rational_at(split_ws(rest)[0], lineno));
  }
  return {n, value};
}

const std::pair<const char*, CurveFamily> kFamilies[] = {
    {"GAMMA0", CurveFamily::GAMMA0},
    {"GAMMA0_PLUS", CurveFamily::GAMMA0_PLUS},
    {"NS_CARTAN_PLUS", CurveFamily::NS_CARTAN_PLUS},
    {"GENERIC_H", CurveFamily::GENERIC_H},
};

const char* family_name(CurveFamily f) {
  for (const auto& [name, fam] : kFamilies)
    if (fam == f) return name;
  return "GAMMA0";
}

long smallest_nonresidue(long N) {
  for (long e = 2; e < N; ++e) {
    Integer ez(e), nz(N);
    if (mpz_kronecker(ez.get_mpz_t(), nz.get_mpz_t()) == -1) return e;
  }
  return 0;
}

std::string rat_str(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

} // namespace

ModularPolynomial parse_modular_polynomial(const std::string& text) {
  ModularPolynomial phi;
  std::vector<Line> lines = split_lines(text);
  for (size_t li = 0; li < lines.size(); ++li) {
    const std::string& s = lines[li].text;
    if (is_blank(s) || s[0] == '#') continue;
    size_t open = s.find('[');
    size_t comma = s.find(',');
    size_t close = s.find(']');
    if (open == std::string::npos || comma == std::string::npos || close == std::string::npos ||
        !(open < comma && comma < close))
      parse_fail(li, "expected a '[i,j] c' term");
    long i = parse_long_at(s.substr(open + 1, comma - open - 1), li);
    long j = parse_long_at(s.substr(comma + 1, close - comma - 1), li);
    std::string cs = s.substr(close + 1);
    std::vector<std::string> toks = split_ws(cs);
    if (toks.size() != 1) parse_fail(li, "expected exactly one coefficient after the exponents");
    Integer c;
    try {
      c = Integer(toks[0]);
    } catch (const std::exception&) {
      parse_fail(li, "malformed integer coefficient '" + toks[0] + "'");
    }
    if (i < j) throw ValidationError("term [" + std::to_string(i) + "," + std::to_string(j) +
                                     "]: exponents must satisfy i >= j");
    if (c == 0) parse_fail(li, "explicit zero coefficient");
    if (!phi.coeffs.emplace(std::make_pair(i, j), c).second)
      parse_fail(li, "duplicate term");
  }
  if (phi.coeffs.empty()) throw ValidationError("no terms");

  long d = 0;
  for (const auto& [ij, c] : phi.coeffs) d = std::max(d, ij.first);
  auto lead = phi.coeffs.find({d, 0});
  if (lead != phi.coeffs.end() && lead->second == 1 && d >= 3) {
    phi.p = d - 1; // the file lists the monic leading term
  } else {
    phi.p = d; // implied monic leading term
    phi.coeffs.emplace(std::make_pair(phi.p + 1, 0L), Integer(1));
  }

  Integer pz(phi.p);
  if (phi.p < 2 || mpz_probab_prime_p(pz.get_mpz_t(), 30) == 0)
    throw ValidationError("degree check: expected degree p+1 with p prime, got p = " +
                          std::to_string(phi.p));
  for (const auto& [ij, c] : phi.coeffs)
    if (ij.first > phi.p + 1)
      throw ValidationError("degree check: term of degree above p+1");

  // Eichler-Shimura: Phi_p = (X^p - Y)(X - Y^p) mod p, i.e. the only
  // nonzero residues are [p+1,0] = 1 and [p,p] = [1,1] = -1
  auto residue = [&](const Integer& c) -> Integer {
    Integer r = c % pz;
    if (r < 0) r += pz;
    return r;
  };
  if (residue(phi.coeff(phi.p + 1, 0)) != 1 || residue(phi.coeff(phi.p, phi.p)) != pz - 1 ||
      residue(phi.coeff(1, 1)) != pz - 1)
    throw ValidationError("Eichler-Shimura congruence check failed at a Frobenius term");
  for (const auto& [ij, c] : phi.coeffs) {
    bool frob = (ij == std::make_pair(phi.p + 1, 0L)) || (ij == std::make_pair(phi.p, phi.p)) ||
                (ij == std::make_pair(1L, 1L));
    if (!frob && residue(c) != 0)
      throw ValidationError("Eichler-Shimura congruence check failed at term [" +
                            std::to_string(ij.first) + "," + std::to_string(ij.second) + "]");
  }
  return phi;
}

FixtureBundle parse_fixture(const std::string& text) {
  FixtureBundle b;
  CurveDescriptor& c = b.curve;
  std::vector<Line> lines = split_lines(text);
  bool curve_seen = false;
  long declared_epsilon = 0;

  size_t li = 0;
  while (li < lines.size()) {
    const std::string& s = lines[li].text;
    if (is_blank(s)) { ++li; continue; }
    if (s[0] == '#') {
      if (!curve_seen) {
        std::string body = s.substr(1);
        if (!body.empty() && body[0] == ' ') body = body.substr(1);
        b.provenance.push_back(body);
      }
      ++li;
      continue;
    }
    std::vector<std::string> toks = split_ws(s);
    const std::string& kw = toks[0];

    if (kw == "curve") {
      if (toks.size() != 5) parse_fail(li, "curve line needs: family N genus h");
      bool found = false;
      for (const auto& [name, fam] : kFamilies)
        if (toks[1] == name) { c.group.family = fam; found = true; }
      if (!found) parse_fail(li, "unknown curve family '" + toks[1] + "'");
      c.group.N = parse_long_at(toks[2], li);
      c.genus = static_cast<int>(parse_long_at(toks[3], li));
      c.h = parse_long_at(toks[4], li);
      if (c.group.N < 1 || c.genus < 1 || c.h < 1)
        throw ValidationError("curve parameters must be positive");
      curve_seen = true;
      ++li;
    } else if (kw == "epsilon") {
      if (toks.size() != 2) parse_fail(li, "epsilon line needs one integer");
      declared_epsilon = parse_long_at(toks[1], li);
      ++li;
    } else if (kw == "normalization") {
      if (toks.size() != 2) parse_fail(li, "normalization line needs one rational");
      c.normalization = parse_rational_at(toks[1], li);
      ++li;
    } else if (kw == "form") {
      if (!curve_seen) parse_fail(li, "form before curve line");
      if (toks.size() != 3) parse_fail(li, "form line needs: index n_terms");
      long idx = parse_long_at(toks[1], li);
      long terms = parse_long_at(toks[2], li);
      if (idx != static_cast<long>(c.basis.size()))
        parse_fail(li, "form indices must be consecutive from 0");
      if (terms < 1) parse_fail(li, "form needs at least one term");
      QExpansion f;
      f.N = c.group.N;
      f.weight = 2;
      f.h = c.h;
      f.coeffs.assign(static_cast<size_t>(terms), {Rational(0)});
      ++li;
      while (li < lines.size() && looks_like_coeff_line(lines[li].text)) {
        auto [n, value] = parse_coeff_line(lines[li].text, li);
        if (n < 0 || n >= terms) parse_fail(li, "coefficient index out of range");
        f.coeffs[static_cast<size_t>(n)] = std::move(value);
        ++li;
      }
      c.basis.push_back(std::move(f));
    } else if (kw == "hecke") {
      if (!curve_seen) parse_fail(li, "hecke before curve line");
      if (toks.size() != 2) parse_fail(li, "hecke line needs one prime");
      long p = parse_long_at(toks[1], li);
      std::vector<std::vector<Rational>> A;
      ++li;
      for (int r = 0; r < c.genus; ++r, ++li) {
        if (li >= lines.size()) parse_fail(li - 1, "truncated hecke matrix");
        std::vector<std::string> row = split_ws(lines[li].text);
        if (static_cast<int>(row.size()) != c.genus)
          parse_fail(li, "hecke row needs exactly genus entries");
        std::vector<Rational> arow;
        for (const auto& e : row) arow.push_back(parse_rational_at(e, li));
        A.push_back(std::move(arow));
      }
      c.hecke[p] = std::move(A);
    } else if (kw == "point") {
      if (toks.size() != 5) parse_fail(li, "point line needs: label j=.. tau=..,.. disc=..");
      RationalPointRecord pt;
      pt.label = toks[1];
      auto field = [&](const std::string& tok, const char* name) -> std::string {
        std::string prefix = std::string(name) + "=";
        if (tok.rfind(prefix, 0) != 0) parse_fail(li, "expected '" + prefix + "...'");
        return tok.substr(prefix.size());
      };
      pt.j_value = parse_rational_at(field(toks[2], "j"), li);
      std::string tau = field(toks[3], "tau");
      size_t comma = tau.find(',');
      if (comma == std::string::npos) parse_fail(li, "tau needs 're,im'");
      pt.tau0 = BigComplex(BigFloat(tau.substr(0, comma), 192),
                           BigFloat(tau.substr(comma + 1), 192));
      std::string disc = field(toks[4], "disc");
      if (disc == "cusp") {
        pt.is_cusp = true;
      } else {
        pt.cm_discriminant = parse_long_at(disc, li);
      }
      b.points.push_back(std::move(pt));
      ++li;
    } else if (kw == "checksum") {
      if (toks.size() != 2) parse_fail(li, "checksum line needs one hex value");
      for (size_t k = li + 1; k < lines.size(); ++k)
        if (!is_blank(lines[k].text)) parse_fail(k, "content after the checksum line");
      std::string want = hex64(fnv1a64(text.substr(0, lines[li].offset)));
      std::string got = toks[1];
      for (auto& ch : got) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
      if (got != want)
        throw ValidationError("checksum mismatch: file says " + got + ", content hashes to " +
                              want);
      ++li;
    } else {
      parse_fail(li, "unknown keyword '" + kw + "'");
    }
  }

  if (!curve_seen) throw ParseError("no curve line");
  if (static_cast<int>(c.basis.size()) != c.genus)
    throw ValidationError("fixture declares genus " + std::to_string(c.genus) + " but lists " +
                          std::to_string(c.basis.size()) + " forms");
  for (const auto& [p, A] : c.hecke) {
    (void)p;
    if (static_cast<int>(A.size()) != c.genus)
      throw ValidationError("hecke matrix is not genus x genus");
  }
  switch (c.group.family) {
  case CurveFamily::GAMMA0: c.uniformizer_default = UniformizerKind::J; break;
  case CurveFamily::GAMMA0_PLUS: c.uniformizer_default = UniformizerKind::J_PLUS_JN; break;
  default: c.uniformizer_default = UniformizerKind::J; break;
  }
  if (c.group.family == CurveFamily::NS_CARTAN_PLUS)
    c.group.epsilon = declared_epsilon != 0 ? declared_epsilon : smallest_nonresidue(c.group.N);

  for (size_t i = 0; i < b.points.size(); ++i)
    for (size_t j = i + 1; j < b.points.size(); ++j)
      if (b.points[i].label == b.points[j].label)
        throw ValidationError("duplicate point label " + b.points[i].label);

  for (const auto& pt : b.points) check_point_coherence(c, pt);
  return b;
}

std::string serialize_fixture(const FixtureBundle& bundle) {
  const CurveDescriptor& c = bundle.curve;
  std::ostringstream os;
  for (const auto& line : bundle.provenance) os << "# " << line << "\n";
  os << "curve " << family_name(c.group.family) << " " << c.group.N << " " << c.genus << " "
     << c.h << "\n";
  if (c.group.family == CurveFamily::NS_CARTAN_PLUS && c.group.epsilon != 0)
    os << "epsilon " << c.group.epsilon << "\n";
  os << "normalization " << rat_str(c.normalization) << "\n";
  for (size_t i = 0; i < c.basis.size(); ++i) {
    const QExpansion& f = c.basis[i];
    os << "form " << i << " " << f.n_terms() << "\n";
    for (long n = 0; n < f.n_terms(); ++n) {
      const auto& v = f.coeffs[static_cast<size_t>(n)];
      bool all_zero = true;
      for (const auto& e : v)
        if (e != 0) all_zero = false;
      if (all_zero) continue;
      os << n << ": ";
      if (v.size() == 1) {
        os << rat_str(v[0]);
      } else {
        os << "[";
        for (size_t k = 0; k < v.size(); ++k) os << (k ? "," : "") << rat_str(v[k]);
        os << "]";
      }
      os << "\n";
    }
  }
  for (const auto& [p, A] : c.hecke) {
    os << "hecke " << p << "\n";
    for (const auto& row : A) {
      for (size_t k = 0; k < row.size(); ++k) os << (k ? " " : "") << rat_str(row[k]);
      os << "\n";
    }
  }
  for (const auto& pt : bundle.points) {
    os << "point " << pt.label << " j=" << rat_str(pt.j_value) << " tau="
       << pt.tau0.re().to_string(21) << "," << pt.tau0.im().to_string(21) << " disc=";
    if (pt.is_cusp)
      os << "cusp";
    else
      os << pt.cm_discriminant;
    os << "\n";
  }
  std::string body = os.str();
  return body + "checksum " + hex64(fnv1a64(body)) + "\n";
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

FixtureBundle load_fixture_file(const std::string& path) {
  return parse_fixture(read_text_file(path));
}

std::string curve_label(const CurveDescriptor& desc) {
  return std::string(family_name(desc.group.family)) + "-" + std::to_string(desc.group.N);
}

namespace {

class LmfdbTransport : public HttpTransport {
public:
  std::string get(const std::string& path) override {
    httplib::Client cli("http://www.lmfdb.org");
    cli.set_follow_location(true);
    auto res = cli.Get(path.c_str());
    if (!res || res->status != 200) return {};
    return res->body;
  }
};

std::string today_utc() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[16];
  std::strftime(buf, sizeof buf, "%Y-%m-%d", &tm);
  return buf;
}

QExpansion parse_cached_qexp(const std::string& text, long level) {
  QExpansion f;
  f.N = level;
  f.weight = 2;
  f.h = 1;
  std::vector<Line> lines = split_lines(text);
  for (size_t li = 0; li < lines.size(); ++li) {
    const std::string& s = lines[li].text;
    if (is_blank(s) || s[0] == '#') continue;
    std::vector<std::string> toks = split_ws(s);
    if (toks[0] == "form") {
      if (toks.size() != 3) parse_fail(li, "form line needs: index n_terms");
      f.coeffs.assign(static_cast<size_t>(parse_long_at(toks[2], li)), {Rational(0)});
    } else if (looks_like_coeff_line(s)) {
      auto [n, value] = parse_coeff_line(s, li);
      if (n < 0 || n >= f.n_terms()) parse_fail(li, "coefficient index out of range");
      f.coeffs[static_cast<size_t>(n)] = std::move(value);
    } else {
      parse_fail(li, "unknown line in cached expansion");
    }
  }
  if (f.coeffs.empty()) throw ParseError("cache file lists no coefficients");
  return f;
}

} // namespace

std::unique_ptr<HttpTransport> make_default_transport() {
  return std::make_unique<LmfdbTransport>();
}

QExpansion lmfdb_fetch(const std::string& label, long n_terms, const std::string& cache_dir,
                       HttpTransport* transport) {
  if (n_terms < 2) throw ValidationError("n_terms must be at least 2");
  size_t dot = label.find('.');
  if (dot == std::string::npos) throw LabelNotFound("malformed newform label '" + label + "'");
  long level = 0;
  try {
    level = std::stol(label.substr(0, dot));
  } catch (const std::exception&) {
    throw LabelNotFound("malformed newform label '" + label + "'");
  }

  std::string cache_path = cache_dir + "/" + label + ".qexp";
  if (std::filesystem::exists(cache_path)) {
    QExpansion f = parse_cached_qexp(read_text_file(cache_path), level);
    if (f.n_terms() >= n_terms) {
      f.coeffs.resize(static_cast<size_t>(n_terms));
      return f;
    }
  }
  if (!transport)
    throw NetworkUnavailable("offline and no cached coefficients for " + label +
                             "; place a manual fixture in the coefficient format at " +
                             cache_path);

  std::string path = "/api/mf_newforms/?label=" + label + "&_format=json&_fields=traces";
  std::string body = transport->get(path);
  if (body.empty())
    throw NetworkUnavailable("no reply from the coefficient API; place a manual fixture at " +
                             cache_path);
  nlohmann::json reply;
  try {
    reply = nlohmann::json::parse(body);
  } catch (const std::exception& e) {
    throw NetworkUnavailable(std::string("unparseable API reply: ") + e.what());
  }
  if (!reply.contains("data") || !reply["data"].is_array() || reply["data"].empty())
    throw LabelNotFound("label " + label + " not found; place a manual fixture at " +
                        cache_path);
  const auto& rec = reply["data"][0];
  if (!rec.contains("traces") || !rec["traces"].is_array())
    throw LabelNotFound("record for " + label + " carries no coefficient traces");

  QExpansion f;
  f.N = level;
  f.weight = 2;
  f.h = 1;
  f.coeffs.assign(static_cast<size_t>(rec["traces"].size()) + 1, {Rational(0)});
  for (size_t i = 0; i < rec["traces"].size(); ++i)
    f.coeffs[i + 1] = {Rational(rec["traces"][i].get<long>())};
  if (f.n_terms() < n_terms)
    throw InsufficientTerms("API returned " + std::to_string(f.n_terms() - 1) +
                            " coefficients, need " + std::to_string(n_terms - 1));

  std::filesystem::create_directories(cache_dir);
  {
    // advisory lock so concurrent fetchers do not interleave cache writes
    std::ofstream lock(cache_dir + "/.lock");
    std::ostringstream os;
    os << "# source: http://www.lmfdb.org" << path << "\n";
    os << "# retrieved: " << today_utc() << "\n";
    os << "# label: " << label << "\n";
    os << "form 0 " << f.n_terms() << "\n";
    for (long n = 0; n < f.n_terms(); ++n)
      if (f.coeffs[static_cast<size_t>(n)][0] != 0)
        os << n << ": " << rat_str(f.coeffs[static_cast<size_t>(n)][0]) << "\n";
    std::ofstream out(cache_path, std::ios::binary);
    out << os.str();
  }
  f.coeffs.resize(static_cast<size_t>(n_terms));
  return f;
}

} // namespace modcol
