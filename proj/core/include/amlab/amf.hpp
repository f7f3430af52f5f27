#pragma once

// AMF1 field files:
//   "AMF1\n"
//   UTF-8 JSON header {"n":[nx,ny,nz],"h":[hx,hy,hz],"origin":[x0,y0,z0],
//                      "kind":"scalar_real|scalar_complex|vector_real|spinor","components":k}
//   one 0x00 byte
//   little-endian float64 payload, component slowest then z, y, x; complex as (re, im)

#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>

#include "amlab/error.hpp"
#include "amlab/field.hpp"

namespace amlab {

using AnyField = std::variant<ScalarField, ComplexField, VectorField, SpinorField>;

enum class FieldKind { scalar_real, scalar_complex, vector_real, spinor };

std::string to_string(FieldKind k);
FieldKind kind_of(const AnyField& f);
const Grid3& grid_of(const AnyField& f);

class FormatError : public Error {
 public:
  enum class Code {
    io,             ///< file could not be opened, read or written
    magic,          ///< first five bytes are not "AMF1\n"
    header,         ///< header is not valid JSON or misses/garbles a key
    size_mismatch,  ///< kind, components and per-node payload disagree
    payload_size,   ///< payload is not a whole number of values per node (truncated or padded)
    non_finite,     ///< payload contains NaN or Inf
  };
  FormatError(Code code, const std::string& what) : Error(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

void write_field(const AnyField& field, std::ostream& out);
void write_field(const AnyField& field, const std::filesystem::path& path);

/// Never returns a partially filled field: any error throws FormatError.
AnyField read_field(std::istream& in);
AnyField read_field(const std::filesystem::path& path);

/// read_field restricted to one kind; any other kind is a size_mismatch error.
template <typename F>
F read_field_as(const std::filesystem::path& path) {
  auto any = read_field(path);
  if (auto* f = std::get_if<F>(&any)) return std::move(*f);
  throw FormatError(FormatError::Code::size_mismatch,
                    "field file holds a " + to_string(kind_of(any)) + " field");
}

}  // namespace amlab
