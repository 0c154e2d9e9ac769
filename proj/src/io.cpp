#include "dsm/io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "dsm/errors.hpp"

namespace dsm {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::string read_line(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) return line;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

void expect_header(std::istream& is, const std::string& header) {
  const std::string line = read_line(is);
  if (line != header) {
    throw InvalidArgument("csv: expected header '" + header + "', got '" + line + "'");
  }
}

std::int64_t parse_int(const std::string& s) {
  std::size_t pos = 0;
  const long long v = std::stoll(s, &pos);
  if (pos != s.size()) throw InvalidArgument("csv: malformed integer '" + s + "'");
  return v;
}

}  // namespace

std::string to_decimal17(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_sweep_csv(std::ostream& os, const SweepResult& sweep) {
  os << "q,ell,ratio\n";
  for (const EscapeRecord& rec : sweep.records) {
    os << rec.q << ',' << rec.ell << ',' << to_decimal17(rec.ratio.to_double()) << '\n';
  }
}

SweepResult read_sweep_csv(std::istream& is) {
  expect_header(is, "q,ell,ratio");
  SweepResult sweep;
  for (std::string line = read_line(is); !line.empty(); line = read_line(is)) {
    const auto fields = split_csv_line(line);
    if (fields.size() != 3) throw InvalidArgument("csv: malformed sweep row '" + line + "'");
    EscapeRecord rec;
    rec.q = parse_int(fields[0]);
    rec.ell = parse_int(fields[1]);
    rec.ratio = Rational(rec.ell, rec.q * rec.q);  // the decimal column is derived
    sweep.records.push_back(std::move(rec));
  }
  compute_ratio_stats(sweep);
  return sweep;
}

void write_young_csv(std::ostream& os, const YoungDiagram& diagram) {
  os << "q,part_index,scaled_part_num,scaled_part_den\n";
  for (std::size_t i = 0; i < diagram.parts.size(); ++i) {
    os << diagram.q << ',' << i << ',' << diagram.parts[i].num() << ','
       << diagram.parts[i].den() << '\n';
  }
}

YoungDiagram read_young_csv(std::istream& is) {
  expect_header(is, "q,part_index,scaled_part_num,scaled_part_den");
  YoungDiagram diagram;
  std::size_t index = 0;
  for (std::string line = read_line(is); !line.empty(); line = read_line(is)) {
    const auto fields = split_csv_line(line);
    if (fields.size() != 4) throw InvalidArgument("csv: malformed young row '" + line + "'");
    const std::int64_t q = parse_int(fields[0]);
    if (diagram.q == 0) diagram.q = q;
    if (q != diagram.q || parse_int(fields[1]) != static_cast<std::int64_t>(index)) {
      throw InvalidArgument("csv: inconsistent young row '" + line + "'");
    }
    diagram.parts.emplace_back(mpz_class(fields[2]), mpz_class(fields[3]));
    ++index;
  }
  return diagram;
}

void write_decomposition_csv(std::ostream& os, std::span<const Orbit> orbits) {
  os << "r,j,orbit_id,period,winding\n";
  for (std::size_t i = 0; i < orbits.size(); ++i) {
    const Orbit& o = orbits[i];
    os << o.representative.r << ',' << o.representative.j << ',' << i << ',' << o.period
       << ',' << o.winding << '\n';
  }
}

void write_decomposition_csv(std::ostream& os, const Decomposition& d) {
  write_decomposition_csv(os, std::span<const Orbit>(d.orbits));
}

std::vector<Orbit> read_decomposition_csv(std::istream& is) {
  expect_header(is, "r,j,orbit_id,period,winding");
  std::vector<Orbit> orbits;
  for (std::string line = read_line(is); !line.empty(); line = read_line(is)) {
    const auto fields = split_csv_line(line);
    if (fields.size() != 5) {
      throw InvalidArgument("csv: malformed decomposition row '" + line + "'");
    }
    if (parse_int(fields[2]) != static_cast<std::int64_t>(orbits.size())) {
      throw InvalidArgument("csv: decomposition rows out of order");
    }
    Orbit o;
    o.representative = {parse_int(fields[0]), parse_int(fields[1])};
    o.period = parse_int(fields[3]);
    o.winding = parse_int(fields[4]);
    o.cls = o.winding != 0 ? OrbitClass::Escaping : OrbitClass::Bounded;
    orbits.push_back(o);
  }
  return orbits;
}

nlohmann::json verdict_to_json(const VerdictReport& verdict) {
  nlohmann::json cases = nlohmann::json::array();
  for (const CaseOutcome& c : verdict.cases) {
    cases.push_back({{"id", c.id},
                     {"expected", c.expected},
                     {"observed", c.observed},
                     {"pass", c.pass}});
  }
  return {{"suite", verdict.suite},
          {"params", verdict.params},
          {"passed", verdict.passed},
          {"cases", std::move(cases)}};
}

VerdictReport verdict_from_json(const nlohmann::json& j) {
  VerdictReport verdict;
  verdict.suite = j.at("suite").get<std::string>();
  verdict.params = j.at("params").get<std::string>();
  verdict.passed = j.at("passed").get<bool>();
  for (const nlohmann::json& c : j.at("cases")) {
    verdict.cases.push_back({c.at("id").get<std::string>(),
                             c.at("expected").get<std::string>(),
                             c.at("observed").get<std::string>(),
                             c.at("pass").get<bool>()});
  }
  return verdict;
}

void write_pgm(std::ostream& os, const PortraitRaster& raster) {
  os << "P5\n" << raster.width << ' ' << raster.height << "\n65535\n";
  for (const std::uint16_t v : raster.pixels) {
    const char bytes[2] = {static_cast<char>(v >> 8), static_cast<char>(v & 0xff)};
    os.write(bytes, 2);
  }
}

}  // namespace dsm
