#include "bprt/io.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

namespace bprt {

namespace {

constexpr std::array<char, 4> kMagic = {'B', 'P', 'R', 'T'};

void put_u32(std::ostream& out, std::uint32_t v) {
  const std::array<char, 4> bytes = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                                     static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
  out.write(bytes.data(), bytes.size());
}

std::uint32_t get_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

void put_f64(std::ostream& out, double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  std::array<char, 8> bytes{};
  for (int b = 0; b < 8; ++b) bytes[static_cast<std::size_t>(b)] = static_cast<char>((bits >> (8 * b)) & 0xff);
  out.write(bytes.data(), bytes.size());
}

double get_f64(const unsigned char* p) {
  std::uint64_t bits = 0;
  for (int b = 0; b < 8; ++b) bits |= static_cast<std::uint64_t>(p[b]) << (8 * b);
  return std::bit_cast<double>(bits);
}

const Json& require_field(const Json& doc, const char* key, const std::string& source) {
  if (!doc.is_object() || !doc.contains(key)) throw ParseError(source, 0, std::string("missing field '") + key + "'");
  return doc.at(key);
}

Index require_positive(const Json& value, const char* key, const std::string& source) {
  if (!value.is_number_integer() || value.get<long long>() < 1) {
    throw ParseError(source, 0, std::string("field '") + key + "' must be a positive integer");
  }
  return static_cast<Index>(value.get<long long>());
}

double require_number(const Json& value, const std::string& source, const std::string& where) {
  if (!value.is_number()) throw ParseError(source, 0, where + " is not a number");
  return value.get<double>();
}

}  // namespace

Json number_or_null(double value) { return std::isfinite(value) ? Json(value) : Json(nullptr); }

Matrix family_from_json(const Json& doc, const std::string& source) {
  const Index dim = require_positive(require_field(doc, "dim", source), "dim", source);
  const Index count = require_positive(require_field(doc, "count", source), "count", source);
  const Json& vectors = require_field(doc, "vectors", source);
  if (!vectors.is_array() || static_cast<Index>(vectors.size()) != count) {
    throw ParseError(source, 0, "'vectors' must be an array of " + std::to_string(count) + " vectors");
  }
  Matrix m(dim, count);
  for (Index i = 0; i < count; ++i) {
    const Json& row = vectors[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != dim) {
      throw ParseError(source, 0, "vector " + std::to_string(i) + " must have " + std::to_string(dim) + " entries");
    }
    for (Index k = 0; k < dim; ++k) {
      m(k, i) = require_number(row[static_cast<std::size_t>(k)], source,
                               "vectors[" + std::to_string(i) + "][" + std::to_string(k) + "]");
    }
  }
  return m;
}

Json family_to_json(const Matrix& columns) {
  Json doc;
  doc["dim"] = columns.rows();
  doc["count"] = columns.cols();
  Json vectors = Json::array();
  for (Index i = 0; i < columns.cols(); ++i) {
    Json row = Json::array();
    for (Index k = 0; k < columns.rows(); ++k) row.push_back(columns(k, i));
    vectors.push_back(std::move(row));
  }
  doc["vectors"] = std::move(vectors);
  return doc;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), 0, "cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return Json::parse(buffer.str());
  } catch (const Json::parse_error& e) {
    throw ParseError(path.string(), e.byte, e.what());
  }
}

Matrix read_family_file(const std::filesystem::path& path) {
  return family_from_json(read_json_file(path), path.string());
}

void write_json_file(const std::filesystem::path& path, const Json& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

Vector vector_from_json(const Json& doc, const std::string& source) {
  const Json* values = &doc;
  if (doc.is_object()) values = &require_field(doc, "vector", source);
  if (!values->is_array()) throw ParseError(source, 0, "expected an array of numbers");
  Vector v(static_cast<Index>(values->size()));
  for (std::size_t k = 0; k < values->size(); ++k) {
    v(static_cast<Index>(k)) = require_number((*values)[k], source, "entry " + std::to_string(k));
  }
  if (doc.is_object() && doc.contains("dim")) {
    const Index dim = require_positive(doc.at("dim"), "dim", source);
    if (dim != v.size()) throw ParseError(source, 0, "'dim' disagrees with vector length");
  }
  return v;
}

Json to_json(const ClosenessReport& report) {
  Json doc;
  doc["generalized_sum"] = report.generalized_sum;
  doc["quadratic_sum"] = report.quadratic_sum ? Json(*report.quadratic_sum) : Json(nullptr);
  doc["banach_sum"] = report.banach_sum;
  doc["partial_sums"] = report.partial_sums;
  return doc;
}

Json to_json(const Certificate& cert) {
  Json doc;
  doc["verdict"] = cert.certified() ? "Certified" : "NotCertified";
  doc["reason"] = cert.certified() ? Json(nullptr) : Json(cert.reason);
  doc["dim"] = cert.dim;
  doc["count"] = cert.count;
  doc["omega_rank"] = cert.omega_rank;
  doc["sigma_min_A"] = cert.sigma_min_A;
  doc["sigma_max_A"] = cert.sigma_max_A;
  doc["cond_A"] = number_or_null(cert.cond_A);
  doc["identity_defect"] = cert.identity_defect;
  doc["fredholm_defects"] = {
      {"kernel_dim_A", cert.fredholm_defects.kernel_dim_A},
      {"kernel_dim_A_star", cert.fredholm_defects.kernel_dim_A_star},
      {"range_perp_residual", cert.fredholm_defects.range_perp_residual},
  };
  doc["closeness"] = to_json(cert.closeness);
  doc["closeness_plateau"] = {{"reached", cert.closeness_plateau}, {"heuristic", true}};
  return doc;
}

Json to_json(const CorpusSpec& spec) {
  Json doc;
  doc["kind"] = to_string(spec.kind);
  doc["base"] = to_string(effective_base(spec));
  doc["dim"] = spec.dim;
  doc["count"] = spec.count;
  doc["decay"] = spec.decay;
  doc["scale"] = spec.scale;
  doc["frequency_shifts"] = spec.frequency_shifts;
  doc["seed"] = spec.seed;
  doc["quadratic_regime"] = quadratic_regime(spec);
  return doc;
}

CorpusSpec corpus_spec_from_json(const Json& doc) {
  const std::string source = "<corpus spec>";
  CorpusSpec spec;
  try {
    spec.kind = parse_corpus_kind(require_field(doc, "kind", source).get<std::string>());
    if (doc.contains("base")) spec.base = parse_base_kind(doc.at("base").get<std::string>());
    spec.dim = require_positive(require_field(doc, "dim", source), "dim", source);
    spec.count = require_positive(require_field(doc, "count", source), "count", source);
    spec.decay = doc.value("decay", spec.decay);
    spec.scale = doc.value("scale", spec.scale);
    spec.frequency_shifts = doc.value("frequency_shifts", spec.frequency_shifts);
    spec.seed = doc.value("seed", spec.seed);
  } catch (const Json::exception& e) {
    throw ParseError(source, 0, e.what());
  }
  return spec;
}

void write_matrix_binary(std::ostream& out, const Matrix& m) {
  out.write(kMagic.data(), kMagic.size());
  put_u32(out, static_cast<std::uint32_t>(m.rows()));
  put_u32(out, static_cast<std::uint32_t>(m.cols()));
  put_u32(out, 0);
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) put_f64(out, m(r, c));
  }
}

void write_matrix_binary(const std::filesystem::path& path, const Matrix& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_matrix_binary(out, m);
}

Matrix read_matrix_binary(std::istream& in, const std::string& source) {
  std::array<unsigned char, 16> header{};
  in.read(reinterpret_cast<char*>(header.data()), header.size());
  if (in.gcount() != 16) throw ParseError(source, static_cast<std::size_t>(in.gcount()), "truncated header");
  if (std::memcmp(header.data(), kMagic.data(), kMagic.size()) != 0) throw ParseError(source, 0, "bad magic");
  const std::uint32_t rows = get_u32(header.data() + 4);
  const std::uint32_t cols = get_u32(header.data() + 8);
  Matrix m(rows, cols);
  std::array<unsigned char, 8> buf{};
  std::size_t offset = 16;
  for (std::uint32_t r = 0; r < rows; ++r) {
    for (std::uint32_t c = 0; c < cols; ++c) {
      in.read(reinterpret_cast<char*>(buf.data()), buf.size());
      if (in.gcount() != 8) throw ParseError(source, offset, "truncated matrix data");
      m(r, c) = get_f64(buf.data());
      offset += 8;
    }
  }
  return m;
}

Matrix read_matrix_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), 0, "cannot open file");
  return read_matrix_binary(in, path.string());
}

void dump_bundle(const std::filesystem::path& dir, const OperatorBundle& bundle) {
  std::filesystem::create_directories(dir);
  write_matrix_binary(dir / "K.bin", bundle.K);
  write_matrix_binary(dir / "A.bin", bundle.A);
  write_matrix_binary(dir / "A_star.bin", bundle.A_star);
  Json sidecar;
  sidecar["format"] = "BPRT f64 row-major little-endian";
  sidecar["level"] = bundle.level;
  sidecar["dim"] = bundle.dim();
  sidecar["identity_defect"] = bundle.identity_defect ? Json(*bundle.identity_defect) : Json(nullptr);
  sidecar["matrices"] = {{"K", "K.bin"}, {"A", "A.bin"}, {"A_star", "A_star.bin"}};
  write_json_file(dir / "operators.json", sidecar);
}

}  // namespace bprt
