#include <dgblock/io.hpp>

#include <json.hpp>

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace dgblock {

namespace {

void write_u32(std::ostream& out, std::uint32_t v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

std::uint32_t read_u32(std::istream& in) {
  std::uint32_t v = 0;
  in.read(reinterpret_cast<char*>(&v), sizeof(v));
  if (!in) throw Error("unexpected end of binary record");
  return v;
}

}  // namespace

void write_matrix_record(std::ostream& out, const Matrix& m) {
  out.write("DGB1", 4);
  write_u32(out, static_cast<std::uint32_t>(m.rows()));
  write_u32(out, static_cast<std::uint32_t>(m.cols()));
  write_u32(out, 1u);
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      const double v = m(i, j);
      out.write(reinterpret_cast<const char*>(&v), sizeof(v));
    }
  }
}

Matrix read_matrix_record(std::istream& in) {
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, "DGB1", 4) != 0) throw Error("bad matrix record magic");
  const auto rows = read_u32(in);
  const auto cols = read_u32(in);
  const auto layout = read_u32(in);
  if (layout != 1u) throw Error("unsupported matrix record layout");
  Matrix m(static_cast<int>(rows), static_cast<int>(cols));
  for (std::uint32_t i = 0; i < rows; ++i) {
    for (std::uint32_t j = 0; j < cols; ++j) {
      double v = 0;
      in.read(reinterpret_cast<char*>(&v), sizeof(v));
      if (!in) throw Error("unexpected end of matrix payload");
      m(static_cast<int>(i), static_cast<int>(j)) = v;
    }
  }
  return m;
}

void write_matrix_file(const std::string& path, const Matrix& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open for writing: " + path);
  write_matrix_record(out, m);
}

Matrix read_matrix_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open: " + path);
  return read_matrix_record(in);
}

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void write_matrix_csv(const std::string& path, const Matrix& m, const std::string& units_note) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open for writing: " + path);
  out << "# " << units_note << "\n";
  out << "row";
  for (int j = 0; j < m.cols(); ++j) out << ",c" << j;
  out << "\n";
  for (int i = 0; i < m.rows(); ++i) {
    out << i;
    for (int j = 0; j < m.cols(); ++j) out << "," << format_double(m(i, j));
    out << "\n";
  }
}

void write_basis_file(const std::string& path, const DGBasis& dg) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open for writing: " + path);
  out.write("DGBS", 4);
  write_u32(out, 1u);
  write_u32(out, static_cast<std::uint32_t>(dg.partition.count()));
  write_u32(out, 0u);
  for (int b = 0; b < dg.partition.count(); ++b) {
    const auto bu = static_cast<std::size_t>(b);
    write_u32(out, static_cast<std::uint32_t>(dg.partition.blocks[bu].size()));
    write_u32(out, static_cast<std::uint32_t>(dg.n_kappa[bu]));
    write_matrix_record(out, dg.u_blocks[bu]);
    Matrix sigma(static_cast<int>(dg.singular_values[bu].size()), 1);
    for (std::size_t k = 0; k < dg.singular_values[bu].size(); ++k) {
      sigma(static_cast<int>(k), 0) = dg.singular_values[bu][k];
    }
    write_matrix_record(out, sigma);
  }
}

BasisFile read_basis_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open: " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, "DGBS", 4) != 0) throw Error("bad basis file magic");
  const auto version = read_u32(in);
  if (version != 1u) throw Error("unsupported basis file version");
  const auto blocks = read_u32(in);
  read_u32(in);
  BasisFile file;
  for (std::uint32_t b = 0; b < blocks; ++b) {
    file.block_sizes.push_back(static_cast<int>(read_u32(in)));
    file.n_kappa.push_back(static_cast<int>(read_u32(in)));
    file.u_blocks.push_back(read_matrix_record(in));
    const Matrix sigma = read_matrix_record(in);
    std::vector<double> vals;
    for (int k = 0; k < sigma.rows(); ++k) vals.push_back(sigma(k, 0));
    file.singular_values.push_back(std::move(vals));
  }
  return file;
}

Geometry read_geometry_file(const std::string& path, double softening) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open geometry file: " + path);
  std::vector<Atom> atoms;
  int dimension = 0;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<double> fields;
    double v;
    while (ls >> v) fields.push_back(v);
    if (fields.empty()) continue;
    if (fields.size() == 2) {
      if (dimension == 3) throw Error("geometry file mixes 1D and 3D atoms");
      dimension = 1;
      atoms.push_back({fields[0], {fields[1], 0, 0}});
    } else if (fields.size() == 4) {
      if (dimension == 1) throw Error("geometry file mixes 1D and 3D atoms");
      dimension = 3;
      atoms.push_back({fields[0], {fields[1], fields[2], fields[3]}});
    } else {
      throw Error("geometry line must be 'Z x' or 'Z x y z'");
    }
  }
  if (atoms.empty()) throw Error("empty geometry");
  return make_geometry(dimension, std::move(atoms), softening);
}

void write_geometry_file(const std::string& path, const Geometry& geometry) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open for writing: " + path);
  out << "# Z x" << (geometry.dimension == 3 ? " y z" : "") << " (bohr)\n";
  for (const auto& atom : geometry.atoms) {
    out << format_double(atom.charge) << " " << format_double(atom.position[0]);
    if (geometry.dimension == 3) {
      out << " " << format_double(atom.position[1]) << " " << format_double(atom.position[2]);
    }
    out << "\n";
  }
}

std::uint64_t fnv1a64(const void* data, std::size_t size) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  std::uint64_t hash = 1469598103934665603ull;
  for (std::size_t i = 0; i < size; ++i) {
    hash ^= bytes[i];
    hash *= 1099511628211ull;
  }
  return hash;
}

std::string file_fnv1a64_hex(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open: " + path);
  std::uint64_t hash = 1469598103934665603ull;
  char buf[65536];
  while (in) {
    in.read(buf, sizeof(buf));
    const auto got = in.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      hash ^= static_cast<unsigned char>(buf[i]);
      hash *= 1099511628211ull;
    }
  }
  char hex[20];
  std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(hash));
  return hex;
}

std::string orbital_label_to_string(const OrbitalLabel& label) {
  std::ostringstream out;
  out << label.block << ":" << label.index << (label.spin == Spin::kUp ? 'u' : 'd');
  if (label.inert) out << '*';
  return out.str();
}

OrbitalLabel orbital_label_from_string(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw Error("bad orbital label: " + text);
  OrbitalLabel label;
  label.block = static_cast<std::int16_t>(std::stoi(text.substr(0, colon)));
  std::size_t pos = colon + 1;
  std::size_t digits = 0;
  label.index = static_cast<std::int16_t>(std::stoi(text.substr(pos), &digits));
  pos += digits;
  if (pos >= text.size()) throw Error("bad orbital label: " + text);
  label.spin = text[pos] == 'd' ? Spin::kDown : Spin::kUp;
  label.inert = text.find('*', pos) != std::string::npos;
  return label;
}

std::string schedule_to_text(const SwapSchedule& schedule) {
  std::ostringstream out;
  out << "WIDTH " << schedule.width << "\n";
  for (int p = 0; p < schedule.width; ++p) {
    out << "INIT " << p << " "
        << orbital_label_to_string(schedule.initial_mapping[static_cast<std::size_t>(p)]) << "\n";
  }
  std::vector<OrbitalLabel> map = schedule.initial_mapping;
  for (const auto& layer : schedule.layers) {
    out << "LAYER";
    bool first = true;
    for (const auto& gate : layer) {
      out << (first ? " " : " ; ");
      first = false;
      switch (gate.kind) {
        case Gate::Kind::kFswap:
          out << "FSWAP " << gate.a << " " << gate.a + 1;
          break;
        case Gate::Kind::kPartSwap:
          out << "PSWAP " << gate.a << ".." << gate.b - 1 << " " << gate.b << ".." << gate.c - 1;
          break;
        case Gate::Kind::kAcquaint: {
          out << "ACQ " << gate.a << ".." << gate.b - 1 << " {";
          for (int p = gate.a; p < gate.b; ++p) {
            if (p > gate.a) out << ",";
            out << orbital_label_to_string(map[static_cast<std::size_t>(p)]);
          }
          out << "}";
          break;
        }
      }
    }
    out << "\n";
    for (const auto& gate : layer) {
      if (gate.kind == Gate::Kind::kFswap) {
        std::swap(map[static_cast<std::size_t>(gate.a)], map[static_cast<std::size_t>(gate.a + 1)]);
      } else if (gate.kind == Gate::Kind::kPartSwap) {
        std::rotate(map.begin() + gate.a, map.begin() + gate.b, map.begin() + gate.c);
      }
    }
  }
  out << "END\n";
  return out.str();
}

SwapSchedule schedule_from_text(const std::string& text) {
  std::istringstream in(text);
  SwapSchedule schedule;
  std::string line;
  bool saw_end = false;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag.empty() || tag[0] == '#') continue;
    if (tag == "WIDTH") {
      ls >> schedule.width;
      schedule.initial_mapping.assign(static_cast<std::size_t>(schedule.width), {});
    } else if (tag == "INIT") {
      int pos;
      std::string label;
      ls >> pos >> label;
      if (pos < 0 || pos >= schedule.width) throw Error("INIT position out of range");
      schedule.initial_mapping[static_cast<std::size_t>(pos)] = orbital_label_from_string(label);
    } else if (tag == "LAYER") {
      Layer layer;
      std::string rest;
      std::getline(ls, rest);
      std::vector<std::string> tokens;
      {
        std::istringstream gs(rest);
        std::string token;
        while (gs >> token) tokens.push_back(token);
      }
      auto parse_range = [](const std::string& r) {
        const auto dots = r.find("..");
        if (dots == std::string::npos) throw Error("bad range: " + r);
        return std::pair<int, int>{std::stoi(r.substr(0, dots)), std::stoi(r.substr(dots + 2))};
      };
      std::size_t k = 0;
      while (k < tokens.size()) {
        const std::string& token = tokens[k];
        if (token == ";") {
          ++k;
          continue;
        }
        if (token == "FSWAP") {
          if (k + 2 >= tokens.size()) throw Error("truncated FSWAP gate");
          const int p = std::stoi(tokens[k + 1]);
          const int q = std::stoi(tokens[k + 2]);
          if (q != p + 1) throw Error("FSWAP positions must be adjacent");
          layer.push_back({Gate::Kind::kFswap, p, 0, 0});
          k += 3;
        } else if (token == "PSWAP") {
          if (k + 2 >= tokens.size()) throw Error("truncated PSWAP gate");
          const auto [a, b] = parse_range(tokens[k + 1]);
          const auto [c, d] = parse_range(tokens[k + 2]);
          if (c != b + 1) throw Error("PSWAP ranges must be adjacent");
          layer.push_back({Gate::Kind::kPartSwap, a, c, d + 1});
          k += 3;
        } else if (token == "ACQ") {
          if (k + 1 >= tokens.size()) throw Error("truncated ACQ gate");
          const auto [a, b] = parse_range(tokens[k + 1]);
          layer.push_back({Gate::Kind::kAcquaint, a, b + 1, 0});
          k += 2;
          // Optional informational label list.
          if (k < tokens.size() && tokens[k].front() == '{') ++k;
        } else {
          throw Error("unknown gate token: " + token);
        }
      }
      schedule.layers.push_back(std::move(layer));
    } else if (tag == "END") {
      saw_end = true;
    } else {
      throw Error("unknown schedule line: " + tag);
    }
  }
  if (!saw_end) throw Error("schedule file missing END");
  // Derive the final mapping by simulation.
  std::vector<OrbitalLabel> map = schedule.initial_mapping;
  for (const auto& layer : schedule.layers) {
    for (const auto& gate : layer) {
      if (gate.kind == Gate::Kind::kFswap) {
        std::swap(map[static_cast<std::size_t>(gate.a)], map[static_cast<std::size_t>(gate.a + 1)]);
      } else if (gate.kind == Gate::Kind::kPartSwap) {
        std::rotate(map.begin() + gate.a, map.begin() + gate.b, map.begin() + gate.c);
      }
    }
  }
  schedule.final_mapping = std::move(map);
  return schedule;
}

void write_schedule_text(const std::string& path, const SwapSchedule& schedule) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open for writing: " + path);
  out << schedule_to_text(schedule);
}

SwapSchedule read_schedule_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return schedule_from_text(buf.str());
}

std::string schedule_to_json(const SwapSchedule& schedule, bool with_trace) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["width"] = schedule.width;
  auto labels_json = [](const std::vector<OrbitalLabel>& labels) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& l : labels) arr.push_back(orbital_label_to_string(l));
    return arr;
  };
  j["initial_mapping"] = labels_json(schedule.initial_mapping);
  nlohmann::json layers = nlohmann::json::array();
  std::vector<OrbitalLabel> map = schedule.initial_mapping;
  nlohmann::json trace = nlohmann::json::array();
  for (const auto& layer : schedule.layers) {
    nlohmann::json lj = nlohmann::json::array();
    for (const auto& gate : layer) {
      nlohmann::json gj;
      switch (gate.kind) {
        case Gate::Kind::kFswap:
          gj["kind"] = "fswap";
          gj["position"] = gate.a;
          break;
        case Gate::Kind::kPartSwap:
          gj["kind"] = "part_swap";
          gj["first"] = {gate.a, gate.b - 1};
          gj["second"] = {gate.b, gate.c - 1};
          break;
        case Gate::Kind::kAcquaint:
          gj["kind"] = "acquaint";
          gj["range"] = {gate.a, gate.b - 1};
          break;
      }
      lj.push_back(gj);
      if (gate.kind == Gate::Kind::kFswap) {
        std::swap(map[static_cast<std::size_t>(gate.a)], map[static_cast<std::size_t>(gate.a + 1)]);
      } else if (gate.kind == Gate::Kind::kPartSwap) {
        std::rotate(map.begin() + gate.a, map.begin() + gate.b, map.begin() + gate.c);
      }
    }
    layers.push_back(lj);
    if (with_trace) trace.push_back(labels_json(map));
  }
  j["layers"] = layers;
  if (with_trace) j["mapping_trace"] = trace;
  j["final_mapping"] = labels_json(schedule.final_mapping);
  j["depth"] = schedule.depth();
  return j.dump(2);
}

void write_schedule_json(const std::string& path, const SwapSchedule& schedule, bool with_trace) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open for writing: " + path);
  out << schedule_to_json(schedule, with_trace) << "\n";
}

}  // namespace dgblock
