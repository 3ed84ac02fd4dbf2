#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "rfl/profile.hpp"

namespace rfl {

namespace {

template <Space Sp>
constexpr const char* axis_name() {
  return Sp == Space::physical ? "r" : "xi";
}

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

template <Space Sp>
std::string to_csv(const Profile<Sp>& u) {
  std::string out = std::string(axis_name<Sp>()) + ",value\n";
  for (std::size_t i = 0; i < u.size(); ++i) {
    out += g17(u.grid().node(i));
    out += ',';
    out += g17(u[i]);
    out += '\n';
  }
  return out;
}

std::string grid_sidecar_json(const GridMeta& m) {
  nlohmann::ordered_json j;
  j["d"] = m.d;
  j["kind"] = m.kind;
  j["r_min"] = m.r_min;
  j["r_max"] = m.r_max;
  j["N"] = m.n;
  return j.dump(2) + "\n";
}

template <Space Sp>
void write_profile(const Profile<Sp>& u, const std::string& path) {
  std::ofstream csv(path);
  if (!csv) throw std::runtime_error("cannot open " + path + " for writing");
  csv << to_csv(u);
  std::ofstream side(path + ".json");
  if (!side) throw std::runtime_error("cannot open " + path + ".json for writing");
  side << grid_sidecar_json(u.grid().meta());
}

template <Space Sp>
Profile<Sp> read_profile(const std::string& path) {
  std::ifstream side(path + ".json");
  if (!side) throw std::runtime_error("missing grid sidecar " + path + ".json");
  const auto j = nlohmann::json::parse(side);
  const std::string kind = j.at("kind").get<std::string>();
  if (kind != "log-spaced") throw ParameterError("grid kind log-spaced violated (" + kind + ")");
  auto grid = RadialGrid::log_spaced(j.at("d").get<int>(), j.at("r_min").get<double>(),
                                     j.at("r_max").get<double>(), j.at("N").get<std::size_t>());
  std::ifstream csv(path);
  if (!csv) throw std::runtime_error("cannot open " + path);
  std::string line;
  std::getline(csv, line);
  const std::string expected = std::string(axis_name<Sp>()) + ",value";
  if (line.rfind(expected, 0) != 0) {
    throw ParameterError("CSV header '" + expected + "' expected in " + path);
  }
  std::vector<double> values;
  values.reserve(grid->size());
  while (std::getline(csv, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string a, b;
    std::getline(ls, a, ',');
    std::getline(ls, b);
    const double r = std::stod(a);
    const std::size_t i = values.size();
    if (i >= grid->size() || std::abs(r - grid->node(i)) > 1e-10 * r) {
      throw ParameterError("CSV nodes match the sidecar grid violated at row " + std::to_string(i));
    }
    values.push_back(std::stod(b));
  }
  return Profile<Sp>(grid, std::move(values));
}

template std::string to_csv(const RadialProfile&);
template std::string to_csv(const SpectralProfile&);
template void write_profile(const RadialProfile&, const std::string&);
template void write_profile(const SpectralProfile&, const std::string&);
template RadialProfile read_profile<Space::physical>(const std::string&);
template SpectralProfile read_profile<Space::frequency>(const std::string&);

}  // namespace rfl
