#ifndef MODCOL_IO_HPP
#define MODCOL_IO_HPP

#include "modcol/curves.hpp"
#include "modcol/hecke.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace modcol {

// Everything a CLI invocation needs, loaded from flat files.
struct FixtureBundle {
  CurveDescriptor curve;
  std::vector<RationalPointRecord> points;
  std::map<long, ModularPolynomial> modular_polys;
  std::vector<std::string> provenance; // leading '#' comment lines, '#' stripped
};

// Flat published format: one "[i,j] c" term per line with i >= j; the
// symmetric completion and (when absent) the monic leading term [p+1,0] 1
// are implied. The result is validated: p prime, degree p+1, and the
// Eichler-Shimura congruence Phi_p = (X^p - Y)(X - Y^p) mod p.
ModularPolynomial parse_modular_polynomial(const std::string& text);

// Line-oriented fixture grammar:
//   # provenance
//   curve <family> <N> <genus> <h>
//   epsilon <e>                  (nonsplit Cartan only, optional)
//   normalization <rational>
//   form <index> <n_terms>       followed by "n: num/den" or "n: [c0,c1,...]"
//   hecke <p>                    followed by <genus> rows of rationals
//   point <label> j=<rational> tau=<re>,<im> disc=<int>|cusp
//   checksum <hex64>             (optional, must be the last line)
// All type invariants are checked, including the tau/j coherence of every
// non-cuspidal point.
FixtureBundle parse_fixture(const std::string& text);

// Inverse of parse_fixture (modular polynomials are separate files and not
// serialized); always appends a checksum line.
std::string serialize_fixture(const FixtureBundle& bundle);

// convenience: read and parse a fixture file
FixtureBundle load_fixture_file(const std::string& path);
std::string read_text_file(const std::string& path);

// short human identifier, e.g. "GAMMA0-37"
std::string curve_label(const CurveDescriptor& desc);

// Injected HTTP layer so tests can fake the network and offline mode can be
// asserted to never open a connection.
struct HttpTransport {
  virtual ~HttpTransport() = default;
  // GET `path` on the LMFDB host, returning the response body
  virtual std::string get(const std::string& path) = 0;
};

std::unique_ptr<HttpTransport> make_default_transport();

// Newform q-expansion by LMFDB label ("37.2.a.a"): the cache directory is
// consulted first; on a miss the coefficients are fetched over HTTP and the
// reply is cached in the fixture coefficient format with a provenance
// header. transport == nullptr means offline (cache only).
QExpansion lmfdb_fetch(const std::string& label, long n_terms, const std::string& cache_dir,
                       HttpTransport* transport);

} // namespace modcol

#endif
