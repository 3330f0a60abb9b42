#include "cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <unistd.h>

#include "toricgw/compactification.hpp"
#include "toricgw/error.hpp"
#include "toricgw/invariants.hpp"
#include "toricgw/mirror_map.hpp"
#include "toricgw/syz.hpp"

namespace toricgw::cli {

namespace {

const char* kModule = "cli";

struct Report {
  nlohmann::json json;
  std::string text;
  int status = 0;
};

std::string series_line(const Series& s) { return s.to_text(); }

ToricData load_data(const RunConfig& c) { return kernel_data(load_stacky_fan(c.fan_path)); }

Report analyze(const RunConfig& c) {
  StackyFan fan = load_stacky_fan(c.fan_path);
  ToricData data = kernel_data(fan);
  BoxReport box = box_elements(fan);
  auto cy = verify_calabi_yau(fan);
  auto sf = verify_semi_fano(data);
  Report r;
  auto& j = r.json;
  j["command"] = "analyze";
  j["fan"] = to_json(fan);
  auto boxes = nlohmann::json::array();
  for (const auto& b : box.elements) boxes.push_back(to_json(b));
  j["box_elements"] = boxes;
  auto ages = nlohmann::json::array();
  for (const auto& b : box.age_one) ages.push_back(b.vector);
  j["age_one"] = ages;
  std::vector<LatticeVector> extras(fan.extra_vectors), age1;
  for (const auto& b : box.age_one) age1.push_back(b.vector);
  std::sort(extras.begin(), extras.end());
  std::sort(age1.begin(), age1.end());
  j["extras_are_age_one_box"] = extras == age1;
  j["kernel"] = to_json(data);
  j["calabi_yau"] = cy.ok() ? nlohmann::json{{"covector", *cy.covector}} : nlohmann::json{{"infeasible", cy.reason}};
  j["semi_fano"] = to_json(sf);

  std::ostringstream t;
  t << "rank " << data.n << ", m = " << data.m << ", m' = " << data.mprime << ", r = " << data.r << "\n";
  t << "box elements:\n";
  for (const auto& b : box.elements) t << "  " << to_string(b.vector) << " age " << to_string(b.age) << "\n";
  t << "kernel basis:\n";
  for (const auto& g : data.kernel_basis) t << "  " << to_string(g) << "\n";
  t << "calabi-yau: " << (cy.ok() ? to_string(*cy.covector) : "no (" + cy.reason + ")") << "\n";
  t << "semi-fano: " << (sf.semi_fano ? "yes" : "no") << "\n";
  r.text = t.str();
  return r;
}

Report mirror_map(const RunConfig& c) {
  ToricData data = load_data(c);
  MirrorMap mm = toric_mirror_map(data, forward_order_for_inverse(data, c.order));
  Assignment inv = inverse_mirror_map(mm, c.order);
  Report r;
  r.json["command"] = "mirror-map";
  r.json["order"] = to_string(c.order);
  r.json["forward"] = to_json(mm);
  r.json["inverse"] = to_json(inv);
  std::ostringstream t;
  for (const auto& f : mm.forward) {
    if (f.direction >= 0)
      t << "log " << f.target.name() << " = log " << f.source.name() << " + " << series_line(f.correction) << "\n";
    else
      t << f.target.name() << " = " << series_line(f.correction) << "\n";
  }
  for (const auto& [v, s] : inv) t << v.name() << " = " << series_line(s) << "\n";
  if (c.bar_fan_path) {
    if (!c.disk) fail_validation(kModule, "run", "--bar needs --disk");
    auto cd = validate_compactification(data, load_stacky_fan(*c.bar_fan_path), DiskClass::parse(*c.disk));
    MirrorMap rel = relative_mirror_map(cd, c.order);
    r.json["relative"] = to_json(rel);
    t << "relative:\n";
    for (const auto& f : rel.forward)
      if (f.direction >= 0)
        t << "  log " << f.target.name() << " = log " << f.source.name() << " + " << series_line(f.correction) << "\n";
  }
  r.text = t.str();
  return r;
}

Report invariants(const RunConfig& c) {
  ToricData data = load_data(c);
  DiskPotential dp = disk_potential(data, DiskClass::parse(*c.disk), c.order);
  InvariantTable table = extract_invariants(data, dp);
  Report r;
  r.json["command"] = "invariants";
  r.json["order"] = to_string(c.order);
  r.json["potential"] = to_json(dp);
  r.json["invariants"] = to_json(data, table);
  std::ostringstream t;
  t << "disk " << dp.disk.to_string() << "\n";
  t << "potential: " << series_line(dp.series) << "\n";
  t << "invariants:\n";
  for (const auto& e : table.entries) {
    t << "  alpha = (";
    for (std::size_t k = 0; k < e.alpha.size(); ++k) t << (k ? "," : "") << to_string(e.alpha[k]);
    t << ") {";
    for (std::size_t k = 0; k < e.insertions.size(); ++k)
      t << (k ? ", " : "") << data.fan.label(e.insertions[k].first) << ": " << e.insertions[k].second;
    t << "} -> " << to_string(e.value) << "\n";
  }
  r.text = t.str();
  return r;
}

Report syz(const RunConfig& c) {
  ToricData data = load_data(c);
  auto gauge = make_gauge(data, c.gauge.value_or(0));
  auto potentials = disk_potentials(data, all_disk_classes(data), c.order);
  MirrorPotential mp = mirror_potential(data, potentials, gauge, c.order);
  Report r;
  r.json = emit_lg_model(data, mp);
  r.json["command"] = "syz";
  r.json["order"] = to_string(c.order);
  std::ostringstream t;
  t << "uv = G, W = u\n";
  for (const auto& term : mp.terms) {
    Monomial cm = mp.coefficients.monomial(data, term.index);
    t << "  " << (cm.is_one() ? std::string("1") : cm.to_string()) << " * (" << series_line(term.series) << ") * z^"
      << to_string(term.reduced) << "\n";
  }
  t << "gauge cone " << gauge.cone << "\n";
  r.text = t.str();
  return r;
}

Report oracle(const RunConfig& c) {
  ToricData data = load_data(c);
  auto cd = validate_compactification(data, load_stacky_fan(*c.bar_fan_path), DiskClass::parse(*c.disk));
  auto cmp = compare_with_oracle(cd, c.order);
  Report r;
  r.json = to_json(cmp);
  r.json["command"] = "oracle";
  r.json["order"] = to_string(c.order);
  r.json["disk"] = cd.disk.to_string();
  std::ostringstream t;
  t << (cmp.match ? "MATCH" : "MISMATCH") << "\n";
  t << "disk_potential:   " << series_line(cmp.disk) << "\n";
  t << "oracle_potential: " << series_line(cmp.oracle) << "\n";
  if (cmp.first_difference)
    t << "first difference at " << cmp.first_difference->to_string() << ": " << to_string(cmp.disk_coefficient)
      << " vs " << to_string(cmp.oracle_coefficient) << "\n";
  r.text = t.str();
  r.status = cmp.match ? 0 : 3;
  return r;
}

void write_atomically(const std::string& path, const std::string& body) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) fail_validation(kModule, "write", "cannot open output", path);
    f << body;
    f.flush();
    if (!f) fail_validation(kModule, "write", "cannot write output", path);
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    fail_validation(kModule, "write", "cannot move output into place", path);
  }
}

nlohmann::json error_object(const Error& e) {
  return {{"error",
           {{"kind", e.kind() == ErrorKind::Validation ? "validation" : "consistency"},
            {"module", e.module()},
            {"operation", e.operation()},
            {"message", e.message()},
            {"datum", e.datum()}}}};
}

}  // namespace

void check_config(const RunConfig& c) {
  static const std::vector<std::string> commands = {"analyze", "mirror-map", "invariants", "syz", "oracle"};
  if (std::find(commands.begin(), commands.end(), c.command) == commands.end())
    fail_validation(kModule, "config", "unknown command", c.command);
  if (c.fan_path.empty()) fail_validation(kModule, "config", "fan file required");
  if (c.order <= 0) fail_validation(kModule, "config", "order must be positive", to_string(c.order));
  if ((c.command == "invariants" || c.command == "oracle") && !c.disk)
    fail_validation(kModule, "config", "--disk is required", c.command);
  if (c.command == "oracle" && !c.bar_fan_path) fail_validation(kModule, "config", "--bar is required", c.command);
  if (c.disk) DiskClass::parse(*c.disk);
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    check_config(config);
    Report r;
    if (config.command == "analyze")
      r = analyze(config);
    else if (config.command == "mirror-map")
      r = mirror_map(config);
    else if (config.command == "invariants")
      r = invariants(config);
    else if (config.command == "syz")
      r = syz(config);
    else
      r = oracle(config);
    std::string body = config.format == Format::Json ? r.json.dump(2) + "\n" : r.text;
    if (config.output)
      write_atomically(*config.output, body);
    else
      out << body << std::flush;
    if (r.status == 3) err << error_object(Error(ErrorKind::Consistency, "invariants", "oracle_potential",
                                                 "oracle differs from the disk potential"))
                                  .dump()
                           << "\n";
    return r.status;
  } catch (const Error& e) {
    err << error_object(e).dump() << "\n";
    return e.kind() == ErrorKind::Validation ? 2 : 3;
  } catch (const std::exception& e) {
    err << error_object(Error(ErrorKind::Consistency, kModule, "run", e.what())).dump() << "\n";
    return 3;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact toric mirror maps, disk potentials and SYZ mirrors"};
  app.require_subcommand(1);
  RunConfig config;
  std::string order = "3", format = "json";
  auto add = [&](const std::string& name, const std::string& help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("fan", config.fan_path, "fan file (JSON)")->required();
    sub->add_option("--order", order, "grade bound (rational)");
    sub->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--output,-o", config.output, "output file (default stdout)");
    return sub;
  };
  auto* analyze_cmd = add("analyze", "fan validation, box elements, kernel, certificates");
  auto* mm_cmd = add("mirror-map", "forward and inverse mirror map");
  mm_cmd->add_option("--bar", config.bar_fan_path, "compactified fan for the relative map");
  mm_cmd->add_option("--disk", config.disk, "disk class ray:<i> or box:<j>");
  auto* inv_cmd = add("invariants", "disk potential and invariant table");
  inv_cmd->add_option("--disk", config.disk, "disk class ray:<i> or box:<j>")->required();
  auto* syz_cmd = add("syz", "Landau-Ginzburg mirror");
  syz_cmd->add_option("--gauge", config.gauge, "index of the gauge cone");
  auto* oracle_cmd = add("oracle", "compare the disk potential with the relative I-function path");
  oracle_cmd->add_option("--bar", config.bar_fan_path, "compactified fan")->required();
  oracle_cmd->add_option("--disk", config.disk, "disk class ray:<i> or box:<j>")->required();
  (void)analyze_cmd;

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << error_object(Error(ErrorKind::Validation, kModule, "parse_command_line", e.what())).dump() << "\n";
    return 2;
  }
  for (auto* sub : app.get_subcommands()) config.command = sub->get_name();
  config.format = format == "text" ? Format::Text : Format::Json;
  try {
    config.order = parse_rational(order);
  } catch (const Error& e) {
    err << error_object(e).dump() << "\n";
    return 2;
  }
  return run(config, out, err);
}

}  // namespace toricgw::cli
