#include "vrebid/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>

#include <json.hpp>

#ifndef VREBID_DATA_DIR
#define VREBID_DATA_DIR "data"
#endif

namespace vrebid::io {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string f;
  while (std::getline(ss, f, ',')) out.push_back(trim(f));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double to_number(const std::string& s, const std::string& where) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(where + ": expected a number, got '" + s + "'");
  }
}

// Rows of a headed CSV as column-name -> field maps; `line` is 1-based in the file.
struct CsvRow {
  std::size_t line;
  std::map<std::string, std::string> f;
};

std::vector<CsvRow> read_csv(const std::string& text, const std::vector<std::string>& required,
                             const std::string& what) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> header;
  std::vector<CsvRow> rows;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (trim(line).empty() || trim(line)[0] == '#') continue;
    auto fields = split(line);
    if (header.empty()) {
      header = fields;
      for (const auto& r : required) {
        if (std::find(header.begin(), header.end(), r) == header.end()) {
          throw ParseError(what + ": missing column '" + r + "'");
        }
      }
      continue;
    }
    if (fields.size() != header.size()) {
      throw ParseError(what + " line " + std::to_string(n) + ": expected " + std::to_string(header.size()) +
                       " fields, got " + std::to_string(fields.size()));
    }
    CsvRow row{n, {}};
    for (std::size_t i = 0; i < header.size(); ++i) row.f[header[i]] = fields[i];
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class T>
T get(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ParseError(where + ": missing field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(where + ": field '" + key + "': " + e.what());
  }
}

template <class T>
T get_or(const json& j, const char* key, T fallback, const std::string& where) {
  return j.contains(key) ? get<T>(j, key, where) : fallback;
}

Instance from_json(const json& j) {
  Instance inst;
  inst.name = get_or<std::string>(j, "name", "instance", "instance");
  inst.scenarios.hours = get<std::size_t>(j, "hours", "instance");
  inst.params.voll = get_or<double>(j, "voll", 1000.0, "instance");
  inst.params.price_cap = get_or<double>(j, "price_cap", inst.params.voll, "instance");
  inst.network.buses = get<std::vector<std::string>>(j, "buses", "instance");
  inst.network.slack_bus = get_or<std::string>(j, "slack_bus", inst.network.buses.empty() ? "" : inst.network.buses[0],
                                               "instance");
  for (const auto& l : get_or<json>(j, "lines", json::array(), "instance")) {
    inst.network.lines.push_back({get<std::string>(l, "from", "line"), get<std::string>(l, "to", "line"),
                                  get<double>(l, "reactance", "line"), get<double>(l, "capacity", "line")});
  }
  for (const auto& u : get<json>(j, "units", "instance")) {
    ConventionalUnit g;
    g.id = get<std::string>(u, "id", "unit");
    const std::string w = "unit " + g.id;
    g.bus = get<std::string>(u, "bus", w);
    g.cost = get<double>(u, "cost", w);
    g.no_load_cost = get_or<double>(u, "no_load_cost", 0.0, w);
    g.startup_cost = get_or<double>(u, "startup_cost", 0.0, w);
    g.up_cost = get<double>(u, "up_cost", w);
    g.down_cost = get<double>(u, "down_cost", w);
    g.p_max = get<double>(u, "p_max", w);
    g.p_min = get_or<double>(u, "p_min", 0.0, w);
    g.ramp_up = get_or<double>(u, "ramp_up", g.p_max, w);
    g.ramp_down = get_or<double>(u, "ramp_down", g.p_max, w);
    const auto sc = get_or<std::string>(u, "start_class", "fast", w);
    if (sc != "fast" && sc != "slow") throw ParseError(w + ": start_class must be 'fast' or 'slow'");
    g.start_class = sc == "fast" ? StartClass::Fast : StartClass::Slow;
    g.u_init = get_or<double>(u, "u_init", 0.0, w);
    g.p_init = get_or<double>(u, "p_init", 0.0, w);
    inst.units.push_back(g);
  }
  for (const auto& v : get_or<json>(j, "vre", json::array(), "instance")) {
    inst.vres.push_back({get<std::string>(v, "id", "vre"), get<std::string>(v, "bus", "vre"),
                         get<double>(v, "capacity", "vre")});
  }
  const auto T = inst.hours();
  const auto dl = get<json>(j, "da_load", "instance");
  inst.scenarios.da_load.assign(inst.network.buses.size(), std::vector<double>(T, 0.0));
  for (auto it = dl.begin(); it != dl.end(); ++it) {
    const auto& buses = inst.network.buses;
    const auto pos = std::find(buses.begin(), buses.end(), it.key());
    if (pos == buses.end()) throw ParseError("da_load: unknown bus '" + it.key() + "'");
    const auto vals = it.value().get<std::vector<double>>();
    if (vals.size() != T) throw ParseError("da_load of bus " + it.key() + ": expected " + std::to_string(T) + " hours");
    inst.scenarios.da_load[pos - buses.begin()] = vals;
  }
  return inst;
}

void read_scenarios(Instance& inst, const std::string& csv) {
  const auto rows = read_csv(csv, {"scenario_id", "probability", "hour", "entity_id", "value_mw"}, "scenarios");
  const std::size_t T = inst.hours();
  const std::size_t K = inst.vres.size();
  const std::size_t N = inst.network.buses.size();
  std::map<std::string, std::size_t> index;
  std::vector<std::vector<std::vector<bool>>> seen_vre;
  auto& scen = inst.scenarios.scenarios;
  for (const auto& r : rows) {
    const std::string where = "scenarios line " + std::to_string(r.line);
    const auto& id = r.f.at("scenario_id");
    const double prob = to_number(r.f.at("probability"), where);
    auto [it, fresh] = index.emplace(id, scen.size());
    if (fresh) {
      Scenario s;
      s.id = id;
      s.probability = prob;
      s.vre.assign(K, std::vector<double>(T, 0.0));
      s.load = inst.scenarios.da_load;  // buses without a row keep the day-ahead load
      scen.push_back(std::move(s));
      seen_vre.emplace_back(K, std::vector<bool>(T, false));
    }
    auto& s = scen[it->second];
    if (std::abs(s.probability - prob) > 1e-12) throw ParseError(where + ": inconsistent probability for " + id);
    const double h = to_number(r.f.at("hour"), where);
    if (h < 1 || h > static_cast<double>(T) || h != std::floor(h)) {
      throw ParseError(where + ": hour must be an integer in 1.." + std::to_string(T));
    }
    const auto t = static_cast<std::size_t>(h) - 1;
    const double v = to_number(r.f.at("value_mw"), where);
    const auto& ent = r.f.at("entity_id");
    bool matched = false;
    for (std::size_t k = 0; k < K; ++k) {
      if (inst.vres[k].id == ent) {
        s.vre[k][t] = v;
        seen_vre[it->second][k][t] = true;
        matched = true;
      }
    }
    for (std::size_t n = 0; n < N && !matched; ++n) {
      if (inst.network.buses[n] == ent) {
        s.load[n][t] = v;
        matched = true;
      }
    }
    if (!matched) throw ParseError(where + ": unknown entity id '" + ent + "'");
  }
  if (scen.empty()) throw ParseError("no scenarios");
  for (std::size_t w = 0; w < scen.size(); ++w) {
    for (std::size_t k = 0; k < K; ++k) {
      for (std::size_t t = 0; t < T; ++t) {
        if (!seen_vre[w][k][t]) {
          throw ParseError("scenario " + scen[w].id + ": no realisation for " + inst.vres[k].id + " hour " +
                           std::to_string(t + 1));
        }
      }
    }
  }
}

Instance finish(Instance inst, bool check) {
  if (check) {
    const auto rep = validate(inst);
    if (!rep.ok()) throw ValidationError(rep);
  }
  return inst;
}

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(what + ": " + e.what());
  }
}

}  // namespace

Instance parse_instance(const std::string& json_text, const std::string& csv_text, bool validate_result) {
  auto inst = from_json(parse_json(json_text, "instance JSON"));
  read_scenarios(inst, csv_text);
  return finish(std::move(inst), validate_result);
}

Instance load_instance(const std::string& instance_json, const std::string& scenarios_csv) {
  return parse_instance(read_file(instance_json), read_file(scenarios_csv));
}

Instance load_instance(const std::string& network_json, const std::string& units_json,
                       const std::string& scenarios_csv) {
  auto net = parse_json(read_file(network_json), network_json);
  const auto units = parse_json(read_file(units_json), units_json);
  for (auto it = units.begin(); it != units.end(); ++it) net[it.key()] = it.value();
  auto inst = from_json(net);
  read_scenarios(inst, read_file(scenarios_csv));
  return finish(std::move(inst), true);
}

std::string instance_to_json(const Instance& inst) {
  json j;
  j["name"] = inst.name;
  j["hours"] = inst.hours();
  j["voll"] = inst.params.voll;
  j["price_cap"] = inst.params.price_cap;
  j["buses"] = inst.network.buses;
  j["slack_bus"] = inst.network.slack_bus;
  j["lines"] = json::array();
  for (const auto& l : inst.network.lines) {
    j["lines"].push_back({{"from", l.from}, {"to", l.to}, {"reactance", l.reactance}, {"capacity", l.capacity}});
  }
  j["units"] = json::array();
  for (const auto& g : inst.units) {
    j["units"].push_back({{"id", g.id},
                          {"bus", g.bus},
                          {"cost", g.cost},
                          {"no_load_cost", g.no_load_cost},
                          {"startup_cost", g.startup_cost},
                          {"up_cost", g.up_cost},
                          {"down_cost", g.down_cost},
                          {"p_max", g.p_max},
                          {"p_min", g.p_min},
                          {"ramp_up", g.ramp_up},
                          {"ramp_down", g.ramp_down},
                          {"start_class", g.start_class == StartClass::Fast ? "fast" : "slow"},
                          {"u_init", g.u_init},
                          {"p_init", g.p_init}});
  }
  j["vre"] = json::array();
  for (const auto& v : inst.vres) j["vre"].push_back({{"id", v.id}, {"bus", v.bus}, {"capacity", v.capacity}});
  j["da_load"] = json::object();
  for (std::size_t n = 0; n < inst.network.buses.size(); ++n) {
    j["da_load"][inst.network.buses[n]] = inst.scenarios.da_load[n];
  }
  return j.dump(2) + "\n";
}

std::string scenarios_to_csv(const Instance& inst) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "scenario_id,probability,hour,entity_id,value_mw\n";
  for (const auto& s : inst.scenarios.scenarios) {
    for (std::size_t t = 0; t < inst.hours(); ++t) {
      for (std::size_t k = 0; k < inst.vres.size(); ++k) {
        os << s.id << ',' << s.probability << ',' << t + 1 << ',' << inst.vres[k].id << ',' << s.vre[k][t] << '\n';
      }
      for (std::size_t n = 0; n < inst.network.buses.size(); ++n) {
        os << s.id << ',' << s.probability << ',' << t + 1 << ',' << inst.network.buses[n] << ',' << s.load[n][t]
           << '\n';
      }
    }
  }
  return os.str();
}

void save_instance(const Instance& inst, const std::string& instance_json, const std::string& scenarios_csv) {
  std::ofstream(instance_json) << instance_to_json(inst);
  std::ofstream(scenarios_csv) << scenarios_to_csv(inst);
}

std::string data_dir() {
  if (const char* env = std::getenv("VREBID_DATA_DIR"); env && *env) return env;
  return VREBID_DATA_DIR;
}

std::vector<std::string> bundled_instances() { return {"t1", "bus3", "bus5"}; }

Instance resolve_instance(const std::string& name_or_path) {
  fs::path p(name_or_path);
  if (!fs::exists(p)) p = fs::path(data_dir()) / (name_or_path + ".json");
  if (!fs::exists(p)) throw ParseError("unknown instance '" + name_or_path + "'");
  const auto csv = p.parent_path() / (p.stem().string() + "_scenarios.csv");
  return load_instance(p.string(), csv.string());
}

BidSet parse_bids(const Instance& inst, const std::string& csv_text) {
  const auto rows = read_csv(csv_text, {"k", "t", "s", "price", "quantity"}, "bids");
  const std::size_t K = inst.vres.size();
  const std::size_t T = inst.hours();
  std::vector<std::vector<std::map<std::size_t, BidSegment>>> segs(K, std::vector<std::map<std::size_t, BidSegment>>(T));
  for (const auto& r : rows) {
    const std::string where = "bids line " + std::to_string(r.line);
    std::size_t k = K;
    for (std::size_t i = 0; i < K; ++i) {
      if (inst.vres[i].id == r.f.at("k")) k = i;
    }
    if (k == K) throw ParseError(where + ": unknown VRE id '" + r.f.at("k") + "'");
    const double t = to_number(r.f.at("t"), where);
    const double s = to_number(r.f.at("s"), where);
    if (t < 1 || t > static_cast<double>(T) || t != std::floor(t)) throw ParseError(where + ": bad hour");
    if (s < 1 || s != std::floor(s)) throw ParseError(where + ": bad segment index");
    auto& slot = segs[k][static_cast<std::size_t>(t) - 1];
    if (!slot.emplace(static_cast<std::size_t>(s), BidSegment{to_number(r.f.at("price"), where),
                                                                to_number(r.f.at("quantity"), where)})
             .second) {
      throw ParseError(where + ": duplicate segment");
    }
  }
  BidSet b;
  b.curves.resize(K);
  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t t = 0; t < T; ++t) {
      BidCurve c{inst.vres[k].id, t, {}};
      std::size_t expect = 1;
      for (const auto& [s, seg] : segs[k][t]) {
        if (s != expect++) throw ParseError("bids: segments of " + c.owner + " hour " + std::to_string(t + 1) +
                                            " are not numbered 1..S");
        c.segments.push_back(seg);
      }
      if (c.segments.empty()) {
        throw ParseError("missing bid curve for " + c.owner + " hour " + std::to_string(t + 1));
      }
      b.curves[k].push_back(std::move(c));
    }
  }
  const auto rep = validate(inst, b);
  if (!rep.ok()) throw ValidationError(rep);
  return b;
}

BidSet load_bids(const Instance& inst, const std::string& path) { return parse_bids(inst, read_file(path)); }

void write_bids_csv(std::ostream& os, const BidSet& bids) {
  os << std::setprecision(12);
  os << "k,t,s,price,quantity\n";
  for (const auto& k : bids.curves) {
    for (const auto& c : k) {
      for (std::size_t s = 0; s < c.segments.size(); ++s) {
        os << c.owner << ',' << c.hour + 1 << ',' << s + 1 << ',' << c.segments[s].price << ','
           << c.segments[s].quantity << '\n';
      }
    }
  }
}

void write_comparison_csv(std::ostream& os, const ComparisonTable& table) {
  os << std::setprecision(12);
  os << "policy,f_da_true_usd,expected_rt_usd,total_usd\n";
  for (const auto& r : table.rows) os << r.policy << ',' << r.f_da_true << ',' << r.expected_rt << ',' << r.total << '\n';
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << std::setprecision(12);
  os << "price_usd_per_mwh,s_bid_usd,s_myd_usd,dam_wind_bid_mw,dam_wind_myd_mw,lmp_da_bid_usd_per_mwh,"
        "lmp_rt_bid_usd_per_mwh,lmp_da_myd_usd_per_mwh,lmp_rt_myd_usd_per_mwh,profit_bid_usd,profit_myd_usd\n";
  for (const auto& r : rows) {
    os << r.price << ',' << r.s_bid << ',' << r.s_myd << ',' << r.dam_wind_bid << ',' << r.dam_wind_myd << ','
       << r.lmp_da_bid << ',' << r.lmp_rt_bid << ',' << r.lmp_da_myd << ',' << r.lmp_rt_myd << ',' << r.profit_bid
       << ',' << r.profit_myd << '\n';
  }
}

void write_schedule_csv(std::ostream& os, const Instance& inst, const DaSchedule& da) {
  os << std::setprecision(12);
  os << "entity_id,hour,segment,quantity_mw,commitment\n";
  for (std::size_t i = 0; i < inst.units.size(); ++i) {
    for (std::size_t t = 0; t < inst.hours(); ++t) {
      os << inst.units[i].id << ',' << t + 1 << ",," << da.pc[i][t] << ',' << da.u[i][t] << '\n';
    }
  }
  for (std::size_t k = 0; k < inst.vres.size(); ++k) {
    for (std::size_t t = 0; t < inst.hours(); ++t) {
      for (std::size_t s = 0; s < da.pw[k][t].size(); ++s) {
        os << inst.vres[k].id << ',' << t + 1 << ',' << s + 1 << ',' << da.pw[k][t][s] << ",\n";
      }
    }
  }
}

void write_dispatch_csv(std::ostream& os, const Instance& inst, const RtDispatch& rt) {
  os << std::setprecision(12);
  os << "entity_id,hour,r_up_mw,r_down_mw,curtail_mw,shed_mw,lmp_usd_per_mwh\n";
  for (std::size_t i = 0; i < inst.units.size(); ++i) {
    for (std::size_t t = 0; t < inst.hours(); ++t) {
      os << inst.units[i].id << ',' << t + 1 << ',' << rt.r_up[i][t] << ',' << rt.r_dn[i][t] << ",,,\n";
    }
  }
  for (std::size_t k = 0; k < inst.vres.size(); ++k) {
    for (std::size_t t = 0; t < inst.hours(); ++t) {
      os << inst.vres[k].id << ',' << t + 1 << ",,," << rt.curtail[k][t] << ",,\n";
    }
  }
  for (std::size_t n = 0; n < inst.network.buses.size(); ++n) {
    for (std::size_t t = 0; t < inst.hours(); ++t) {
      os << inst.network.buses[n] << ',' << t + 1 << ",,,," << rt.shed[n][t] << ',' << rt.lmp[n][t] << '\n';
    }
  }
}

}  // namespace vrebid::io
