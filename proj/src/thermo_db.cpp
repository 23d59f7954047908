#include "chemeq/thermo.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>

namespace chemeq {

ThermoParseError::ThermoParseError(std::string species, std::size_t line, const std::string& what)
    : std::runtime_error("thermo database, line " + std::to_string(line) +
                         (species.empty() ? std::string{} : " (species '" + species + "')") + ": " + what),
      species_(std::move(species)),
      line_(line) {}

namespace {

constexpr std::array<double, 8> kStandardExponents{-2.0, -1.0, 0.0, 1.0, 2.0, 3.0, 4.0, 0.0};

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

// 1-based, inclusive column range; short lines read as blank.
std::string field(const std::string& line, std::size_t first_col, std::size_t last_col) {
  if (line.size() < first_col) return {};
  return trim(std::string_view(line).substr(first_col - 1, last_col - first_col + 1));
}

struct LineReader {
  std::istream& in;
  std::size_t line_no = 0;

  bool next(std::string& line) {
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '!' || line[0] == '#') continue;
      if (trim(line).empty()) continue;
      return true;
    }
    return false;
  }
};

class RecordParser {
 public:
  RecordParser(LineReader& reader, std::string species) : reader_(reader), species_(std::move(species)) {}

  std::string line() {
    std::string l;
    if (!reader_.next(l)) fail("unexpected end of file inside record");
    return l;
  }

  double number(const std::string& l, std::size_t c0, std::size_t c1, const char* what) {
    std::string text = field(l, c0, c1);
    if (text.empty()) fail(std::string("missing ") + what);
    std::replace_if(text.begin(), text.end(), [](char c) { return c == 'D' || c == 'd'; }, 'E');
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0' || !std::isfinite(v)) {
      fail(std::string("malformed ") + what + " '" + text + "'");
    }
    return v;
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ThermoParseError(species_, reader_.line_no, msg); }

 private:
  LineReader& reader_;
  std::string species_;
};

std::string canonical_symbol(std::string sym) {
  for (std::size_t i = 0; i < sym.size(); ++i) {
    sym[i] = static_cast<char>(i == 0 ? std::toupper(static_cast<unsigned char>(sym[i]))
                                      : std::tolower(static_cast<unsigned char>(sym[i])));
  }
  return sym;
}

}  // namespace

std::vector<SpeciesRecord> parse_thermo_db(std::istream& source) {
  LineReader reader{source};
  std::vector<SpeciesRecord> out;
  std::string l;

  // Optional "thermo" keyword followed by the global temperature-interval line.
  bool have_line = reader.next(l);
  if (have_line && trim(l).rfind("thermo", 0) == 0) {
    if (!reader.next(l)) return out;  // global interval line
    have_line = reader.next(l);
  }

  for (; have_line; have_line = reader.next(l)) {
    const std::string head = trim(l);
    if (head.rfind("END", 0) == 0) {
      if (head.rfind("END REACTANTS", 0) == 0) break;
      continue;
    }

    std::istringstream name_stream(field(l, 1, 24));
    std::string name;
    name_stream >> name;
    if (name.empty()) throw ThermoParseError({}, reader.line_no, "record without species name");

    RecordParser rp(reader, name);
    const std::string l2 = rp.line();
    const double nseg_d = rp.number(l2, 1, 2, "segment count");
    const int nseg = static_cast<int>(nseg_d);
    if (nseg < 0 || nseg != nseg_d) rp.fail("invalid segment count");

    SpeciesRecord rec;
    rec.name = name;
    double electrons = 0.0;
    for (std::size_t k = 0; k < 5; ++k) {
      const std::size_t c = 11 + 8 * k;
      const std::string sym = field(l2, c, c + 1);
      if (sym.empty()) continue;
      const double count = rp.number(l2, c + 2, c + 7, "element count");
      if (count == 0.0) continue;
      const std::string symbol = canonical_symbol(sym);
      if (symbol == "E") {
        electrons += count;
      } else {
        rec.elements[symbol] += count;
      }
    }
    if (std::abs(electrons - std::round(electrons)) > 1e-9) rp.fail("non-integer electron count");
    rec.charge = -static_cast<int>(std::lround(electrons));

    const double phase = rp.number(l2, 52, 52, "phase flag");
    rec.molar_mass = rp.number(l2, 53, 65, "molar mass") * 1e-3;
    if (!(rec.molar_mass > 0.0)) rp.fail("molar mass must be positive");

    if (nseg == 0) {
      rp.line();  // reference enthalpy line of a reactant-only entry
      continue;
    }

    for (int k = 0; k < nseg; ++k) {
      const std::string ls = rp.line();
      ThermoSegment seg;
      seg.t_low = rp.number(ls, 1, 11, "segment lower temperature");
      seg.t_high = rp.number(ls, 12, 22, "segment upper temperature");
      const double nexp = rp.number(ls, 23, 23, "exponent count");
      if (nexp != 7.0) rp.fail("only 7-term polynomials are supported");
      for (std::size_t e = 0; e < 7; ++e) {
        const double ex = rp.number(ls, 24 + 5 * e, 28 + 5 * e, "exponent");
        if (ex != kStandardExponents[e]) rp.fail("non-standard polynomial exponents");
      }
      if (!(seg.t_low < seg.t_high)) rp.fail("segment t_low must be below t_high");

      const std::string c1 = rp.line();
      for (std::size_t e = 0; e < 5; ++e) {
        seg.a[e] = rp.number(c1, 1 + 16 * e, 16 + 16 * e, "coefficient");
      }
      const std::string c2 = rp.line();
      seg.a[5] = rp.number(c2, 1, 16, "coefficient");
      seg.a[6] = rp.number(c2, 17, 32, "coefficient");
      seg.b[0] = rp.number(c2, 49, 64, "integration constant b1");
      seg.b[1] = rp.number(c2, 65, 80, "integration constant b2");
      rec.segments.push_back(seg);
    }

    if (phase != 0.0) continue;  // condensed species are not modelled

    std::sort(rec.segments.begin(), rec.segments.end(),
              [](const ThermoSegment& x, const ThermoSegment& y) { return x.t_low < y.t_low; });
    for (std::size_t k = 1; k < rec.segments.size(); ++k) {
      if (std::abs(rec.segments[k].t_low - rec.segments[k - 1].t_high) > 1e-6) {
        rp.fail("temperature segments are not contiguous");
      }
    }
    if (std::any_of(out.begin(), out.end(), [&](const SpeciesRecord& r) { return r.name == rec.name; })) {
      rp.fail("duplicate species");
    }
    out.push_back(std::move(rec));
  }
  return out;
}

ThermoDatabase::ThermoDatabase(std::vector<SpeciesRecord> records) : records_(std::move(records)) {
  for (std::size_t i = 0; i < records_.size(); ++i) {
    if (!index_.emplace(records_[i].name, i).second) {
      throw std::invalid_argument("duplicate species '" + records_[i].name + "'");
    }
  }
}

ThermoDatabase ThermoDatabase::from_stream(std::istream& source) { return ThermoDatabase(parse_thermo_db(source)); }

ThermoDatabase ThermoDatabase::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open thermodynamic database '" + path.string() + "'");
  return from_stream(in);
}

const SpeciesRecord* ThermoDatabase::find(std::string_view name) const {
  const auto it = index_.find(name);
  return it == index_.end() ? nullptr : &records_[it->second];
}

const SpeciesRecord& ThermoDatabase::at(std::string_view name) const {
  if (const auto* r = find(name)) return *r;
  std::string msg = "unknown species '" + std::string(name) + "'; available:";
  for (const auto& r : records_) msg += " " + r.name;
  throw std::out_of_range(msg);
}

std::vector<SpeciesRecord> ThermoDatabase::select(std::span<const std::string> names) const {
  std::vector<SpeciesRecord> out;
  out.reserve(names.size());
  for (const auto& n : names) out.push_back(at(n));
  return out;
}

std::vector<std::string> ThermoDatabase::names() const {
  std::vector<std::string> out;
  out.reserve(records_.size());
  for (const auto& r : records_) out.push_back(r.name);
  return out;
}

std::filesystem::path resolve_database_path(const std::optional<std::filesystem::path>& explicit_path) {
  if (explicit_path && !explicit_path->empty()) return *explicit_path;
  if (const char* env = std::getenv("CHEMEQ_THERMO"); env != nullptr && *env != '\0') {
    return std::filesystem::path(env);
  }
  return std::filesystem::path(CHEMEQ_DEFAULT_THERMO);
}

}  // namespace chemeq
