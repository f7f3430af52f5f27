#include "amlab/amf.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <iterator>
#include <nlohmann/json.hpp>
#include <optional>
#include <ostream>
#include <vector>

namespace amlab {

namespace {

constexpr char kMagic[] = "AMF1\n";
constexpr std::size_t kMagicLen = 5;

int components_of(FieldKind k) {
  switch (k) {
    case FieldKind::scalar_real:
    case FieldKind::scalar_complex:
      return 1;
    case FieldKind::vector_real:
      return 3;
    case FieldKind::spinor:
      return 4;
  }
  return 0;
}

bool is_complex(FieldKind k) { return k == FieldKind::scalar_complex || k == FieldKind::spinor; }

FieldKind parse_kind(const std::string& s) {
  if (s == "scalar_real") return FieldKind::scalar_real;
  if (s == "scalar_complex") return FieldKind::scalar_complex;
  if (s == "vector_real") return FieldKind::vector_real;
  if (s == "spinor") return FieldKind::spinor;
  throw FormatError(FormatError::Code::header, "unknown field kind '" + s + "'");
}

void put_f64(std::string& out, double v) {
  auto bits = std::bit_cast<std::uint64_t>(v);
  for (int b = 0; b < 8; ++b) {
    out.push_back(static_cast<char>(bits & 0xffu));
    bits >>= 8;
  }
}

double get_f64(const unsigned char* p) {
  std::uint64_t bits = 0;
  for (int b = 7; b >= 0; --b) bits = (bits << 8) | p[b];
  return std::bit_cast<double>(bits);
}

template <typename F>
std::vector<double> flatten(const F& f) {
  std::vector<double> out;
  const auto d = f.data();
  if constexpr (std::is_same_v<typename F::value_type, cplx>) {
    out.reserve(d.size() * 2);
    for (const auto& z : d) {
      out.push_back(z.real());
      out.push_back(z.imag());
    }
  } else {
    out.assign(d.begin(), d.end());
  }
  return out;
}

template <typename F>
F unflatten(const Grid3& g, const std::vector<double>& flat) {
  using T = typename F::value_type;
  std::vector<T> data;
  if constexpr (std::is_same_v<T, cplx>) {
    data.resize(flat.size() / 2);
    for (std::size_t i = 0; i < data.size(); ++i) data[i] = cplx(flat[2 * i], flat[2 * i + 1]);
  } else {
    data = flat;
  }
  return F(g, std::move(data));
}

}  // namespace

std::string to_string(FieldKind k) {
  switch (k) {
    case FieldKind::scalar_real:
      return "scalar_real";
    case FieldKind::scalar_complex:
      return "scalar_complex";
    case FieldKind::vector_real:
      return "vector_real";
    case FieldKind::spinor:
      return "spinor";
  }
  return "unknown";
}

FieldKind kind_of(const AnyField& f) { return static_cast<FieldKind>(f.index()); }

const Grid3& grid_of(const AnyField& f) {
  return std::visit([](const auto& x) -> const Grid3& { return x.grid(); }, f);
}

void write_field(const AnyField& field, std::ostream& out) {
  const Grid3& g = grid_of(field);
  const FieldKind kind = kind_of(field);
  nlohmann::ordered_json header;
  header["n"] = {g.n()[0], g.n()[1], g.n()[2]};
  header["h"] = {g.h().x, g.h().y, g.h().z};
  header["origin"] = {g.origin().x, g.origin().y, g.origin().z};
  header["kind"] = to_string(kind);
  header["components"] = components_of(kind);

  const auto flat = std::visit([](const auto& f) { return flatten(f); }, field);
  std::string bytes(kMagic, kMagicLen);
  bytes += header.dump();
  bytes.push_back('\0');
  bytes.reserve(bytes.size() + flat.size() * 8);
  for (double v : flat) put_f64(bytes, v);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw FormatError(FormatError::Code::io, "failed to write field data");
}

void write_field(const AnyField& field, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError(FormatError::Code::io, "cannot open '" + path.string() + "' for writing");
  write_field(field, out);
  out.close();
  if (!out) throw FormatError(FormatError::Code::io, "failed to write '" + path.string() + "'");
}

AnyField read_field(std::istream& in) {
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  if (bytes.size() < kMagicLen || std::memcmp(bytes.data(), kMagic, kMagicLen) != 0) {
    throw FormatError(FormatError::Code::magic, "not an AMF1 file (magic mismatch)");
  }
  const auto nul = std::find(bytes.begin() + kMagicLen, bytes.end(), 0);
  if (nul == bytes.end()) throw FormatError(FormatError::Code::header, "header terminator missing");
  const std::string header_text(bytes.begin() + kMagicLen, nul);

  nlohmann::json header;
  try {
    header = nlohmann::json::parse(header_text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(FormatError::Code::header, std::string("malformed header: ") + e.what());
  }

  std::array<int, 3> n{};
  Vec3 h;
  Vec3 origin;
  FieldKind kind{};
  int components = 0;
  try {
    for (int a = 0; a < 3; ++a) {
      n[a] = header.at("n").at(a).get<int>();
      h[a] = header.at("h").at(a).get<double>();
      origin[a] = header.at("origin").at(a).get<double>();
    }
    kind = parse_kind(header.at("kind").get<std::string>());
    components = header.at("components").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(FormatError::Code::header, std::string("incomplete header: ") + e.what());
  }
  if (components != components_of(kind)) {
    throw FormatError(FormatError::Code::size_mismatch,
                      "kind '" + to_string(kind) + "' expects " +
                          std::to_string(components_of(kind)) + " components, header says " +
                          std::to_string(components));
  }

  std::optional<Grid3> grid;
  try {
    grid.emplace(n, h, origin);
  } catch (const ShapeError& e) {
    throw FormatError(FormatError::Code::header, std::string("invalid grid: ") + e.what());
  }

  const std::size_t values =
      grid->size() * static_cast<std::size_t>(components) * (is_complex(kind) ? 2u : 1u);
  const std::size_t payload = static_cast<std::size_t>(bytes.end() - nul) - 1;
  const std::size_t node_bytes = grid->size() * 8;
  if (payload != values * 8 && payload > 0 && payload % node_bytes == 0) {
    // A whole number of values per node: the payload belongs to another kind.
    throw FormatError(FormatError::Code::size_mismatch,
                      "payload holds " + std::to_string(payload / node_bytes) +
                          " values per node, kind '" + to_string(kind) + "' needs " +
                          std::to_string(values / grid->size()));
  }
  if (payload != values * 8) {
    throw FormatError(FormatError::Code::payload_size,
                      "payload holds " + std::to_string(payload) + " bytes, header implies " +
                          std::to_string(values * 8));
  }

  std::vector<double> flat(values);
  const unsigned char* p = &*(nul + 1);
  for (std::size_t i = 0; i < values; ++i) {
    flat[i] = get_f64(p + 8 * i);
    if (!std::isfinite(flat[i])) {
      throw FormatError(FormatError::Code::non_finite,
                        "payload value " + std::to_string(i) + " is not finite");
    }
  }

  switch (kind) {
    case FieldKind::scalar_real:
      return unflatten<ScalarField>(*grid, flat);
    case FieldKind::scalar_complex:
      return unflatten<ComplexField>(*grid, flat);
    case FieldKind::vector_real:
      return unflatten<VectorField>(*grid, flat);
    case FieldKind::spinor:
      return unflatten<SpinorField>(*grid, flat);
  }
  throw FormatError(FormatError::Code::header, "unreachable field kind");
}

AnyField read_field(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(FormatError::Code::io, "cannot open '" + path.string() + "'");
  return read_field(in);
}

}  // namespace amlab
