#pragma once

//
// File formats: the "DGB1" binary matrix container, the multi-record basis
// file, plain-text geometry input, CSV emission, schedule text/JSON, and
// content hashing for manifests. All numeric payloads are little-endian
// float64; text output is locale-independent.
//

#include <dgblock/dgbasis.hpp>
#include <dgblock/primitive.hpp>
#include <dgblock/swapnet.hpp>
#include <dgblock/types.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>

namespace dgblock {

// 16-byte header: magic "DGB1", u32 rows, u32 cols, u32 layout tag
// (1 = row-major float64), then the payload.
void write_matrix_record(std::ostream& out, const Matrix& m);
Matrix read_matrix_record(std::istream& in);

void write_matrix_file(const std::string& path, const Matrix& m);
Matrix read_matrix_file(const std::string& path);

void write_matrix_csv(const std::string& path, const Matrix& m,
                      const std::string& units_note);

// Basis container: "DGBS" header with the block count, then per block
// u32 kappa size, u32 kept count, a U record and a singular-value record.
void write_basis_file(const std::string& path, const DGBasis& dg);
struct BasisFile {
  std::vector<int> block_sizes;
  std::vector<int> n_kappa;
  std::vector<Matrix> u_blocks;
  std::vector<std::vector<double>> singular_values;
};
BasisFile read_basis_file(const std::string& path);

// One atom per line: "Z x [y z]" in bohr; '#' starts a comment.
Geometry read_geometry_file(const std::string& path, double softening);
void write_geometry_file(const std::string& path, const Geometry& geometry);

// Deterministic text form of a double (shortest round-trip).
std::string format_double(double value);

// FNV-1a 64-bit content hash, reported as fixed-width hex.
std::uint64_t fnv1a64(const void* data, std::size_t size);
std::string file_fnv1a64_hex(const std::string& path);

// Line-oriented schedule format: WIDTH, INIT lines, then one LAYER line per
// layer with gates joined by " ; ".
std::string schedule_to_text(const SwapSchedule& schedule);
SwapSchedule schedule_from_text(const std::string& text);
void write_schedule_text(const std::string& path, const SwapSchedule& schedule);
SwapSchedule read_schedule_text(const std::string& path);

// JSON variant; `with_trace` adds the mapping after every layer.
std::string schedule_to_json(const SwapSchedule& schedule, bool with_trace = false);
void write_schedule_json(const std::string& path, const SwapSchedule& schedule,
                         bool with_trace = false);

std::string orbital_label_to_string(const OrbitalLabel& label);
OrbitalLabel orbital_label_from_string(const std::string& text);

}  // namespace dgblock
