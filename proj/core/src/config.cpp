#include <dgblock/config.hpp>

#include <dgblock/io.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace dgblock {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

bool parse_bool(const std::string& value, const std::string& key) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw Error("config key '" + key + "' expects a boolean, got '" + value + "'");
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig config;
  std::istringstream in(text);
  std::string line;
  std::string section = "system";
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw Error("config: unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      std::ostringstream msg;
      msg << "config line " << line_no << ": expected key = value";
      throw Error(msg.str());
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const std::string qualified = section + "." + key;

    try {
      if (qualified == "system.atoms") {
        config.atoms = std::stoi(value);
      } else if (qualified == "system.bond") {
        config.bond = std::stod(value);
      } else if (qualified == "system.geometry") {
        config.geometry_file = value;
      } else if (qualified == "system.spacing") {
        config.spacing = std::stod(value);
      } else if (qualified == "system.padding") {
        config.padding = std::stod(value);
      } else if (qualified == "system.kinetic") {
        if (value != "fd2" && value != "sinc") throw Error("kinetic must be fd2 or sinc");
        config.kinetic = value;
      } else if (qualified == "system.softening") {
        config.softening = std::stod(value);
      } else if (qualified == "system.self_term") {
        config.self_term = parse_bool(value, qualified);
      } else if (qualified == "active.shells") {
        config.shells.clear();
        for (const auto& item : split_list(value)) config.shells.push_back(std::stod(item));
      } else if (qualified == "active.scf") {
        if (value != "none" && value != "rhf" && value != "uhf") {
          throw Error("scf must be none, rhf or uhf");
        }
        config.scf = value;
      } else if (qualified == "active.electrons") {
        config.electrons = std::stoi(value);
      } else if (qualified == "active.hybrid_alpha") {
        config.hybrid_alpha = std::stod(value);
      } else if (qualified == "active.keep") {
        config.keep = value;
      } else if (qualified == "dg.partition") {
        config.partition = value;
      } else if (qualified == "dg.tau") {
        config.taus.clear();
        for (const auto& item : split_list(value)) config.taus.push_back(std::stod(item));
      } else if (qualified == "dg.tau_mode") {
        if (value != "relative" && value != "absolute") {
          throw Error("tau_mode must be relative or absolute");
        }
        config.tau_mode = value;
      } else if (qualified == "metrics.cutoff") {
        config.cutoff = std::stod(value);
      } else if (qualified == "sweep.sizes") {
        config.sweep_sizes.clear();
        for (const auto& item : split_list(value)) config.sweep_sizes.push_back(std::stoi(item));
      } else if (qualified == "output.dir") {
        config.out_dir = value;
      } else if (qualified == "output.threads") {
        config.threads = std::stoi(value);
      } else if (qualified == "output.seed") {
        config.seed = std::stoull(value);
      } else {
        throw Error("unknown config key '" + qualified + "'");
      }
    } catch (const std::invalid_argument&) {
      throw Error("config key '" + qualified + "' has a malformed value '" + value + "'");
    }
  }

  if (config.atoms < 1) throw Error("config: atoms must be >= 1");
  if (config.spacing <= 0) throw Error("config: spacing must be positive");
  if (config.padding < 0) throw Error("config: padding must be nonnegative");
  if (config.softening <= 0) throw Error("config: softening must be positive");
  if (config.shells.empty()) throw Error("config: shells must be nonempty");
  if (config.taus.empty()) throw Error("config: tau list must be nonempty");
  for (double tau : config.taus) {
    if (tau < 0) throw Error("config: tau must be nonnegative");
  }
  if (config.cutoff < 0) throw Error("config: cutoff must be nonnegative");
  if (config.threads < 1) throw Error("config: threads must be >= 1");
  return config;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::string canonical_config_text(const ExperimentConfig& c) {
  std::ostringstream out;
  out << "[system]\n";
  out << "atoms = " << c.atoms << "\n";
  out << "bond = " << format_double(c.bond) << "\n";
  if (!c.geometry_file.empty()) out << "geometry = " << c.geometry_file << "\n";
  out << "spacing = " << format_double(c.spacing) << "\n";
  out << "padding = " << format_double(c.padding) << "\n";
  out << "kinetic = " << c.kinetic << "\n";
  out << "softening = " << format_double(c.softening) << "\n";
  out << "self_term = " << (c.self_term ? "true" : "false") << "\n";
  out << "[active]\n";
  out << "shells = ";
  for (std::size_t i = 0; i < c.shells.size(); ++i) {
    out << (i ? "," : "") << format_double(c.shells[i]);
  }
  out << "\n";
  out << "scf = " << c.scf << "\n";
  out << "electrons = " << c.electrons << "\n";
  out << "hybrid_alpha = " << format_double(c.hybrid_alpha) << "\n";
  if (!c.keep.empty()) out << "keep = " << c.keep << "\n";
  out << "[dg]\n";
  out << "partition = " << c.partition << "\n";
  out << "tau = ";
  for (std::size_t i = 0; i < c.taus.size(); ++i) {
    out << (i ? "," : "") << format_double(c.taus[i]);
  }
  out << "\n";
  out << "tau_mode = " << c.tau_mode << "\n";
  out << "[metrics]\n";
  out << "cutoff = " << format_double(c.cutoff) << "\n";
  if (!c.sweep_sizes.empty()) {
    out << "[sweep]\n";
    out << "sizes = ";
    for (std::size_t i = 0; i < c.sweep_sizes.size(); ++i) {
      out << (i ? "," : "") << c.sweep_sizes[i];
    }
    out << "\n";
  }
  out << "[output]\n";
  out << "dir = " << c.out_dir << "\n";
  out << "threads = " << c.threads << "\n";
  out << "seed = " << c.seed << "\n";
  return out.str();
}

}  // namespace dgblock
