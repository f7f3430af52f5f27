#include <doctest.h>

#include <filesystem>
#include <limits>
#include <numbers>
#include <sstream>

#include "amlab/amf.hpp"
#include "amlab/diff.hpp"
#include "amlab/error.hpp"
#include "amlab/parallel.hpp"
#include "amlab/reduce.hpp"
#include "support.hpp"

using namespace amlab;
using namespace amlab::test;

TEST_SUITE("grid") {
  TEST_CASE("cube nodes are cell centred and symmetric") {
    const Grid3 g = Grid3::cube(16, 4.0);
    CHECK(g.h().x == doctest::Approx(0.5));
    CHECK(g.node(0, 0, 0).x == doctest::Approx(-3.75));
    CHECK(g.node(15, 15, 15).z == doctest::Approx(3.75));
    CHECK(g.lower_corner().y == doctest::Approx(-4.0));
    CHECK(g.upper_corner().y == doctest::Approx(4.0));
    for (int i = 0; i < 16; ++i) CHECK(g.node(i, 0, 0).x == -g.node(15 - i, 0, 0).x);
  }

  TEST_CASE("grid geometry is validated") {
    CHECK_THROWS_AS(Grid3({4, 8, 8}, {1, 1, 1}, {0, 0, 0}), ShapeError);
    CHECK_THROWS_AS(Grid3({8, 8, 8}, {1, 0, 1}, {0, 0, 0}), ShapeError);
    CHECK_THROWS_AS(Grid3::cube(16, -1.0), ShapeError);
    const Grid3 g = Grid3::cube(16, 4.0);
    CHECK(g.extended(3).shrunk(3) == g);
    CHECK(g.ijk(g.index(3, 5, 7)) == std::array<int, 3>{3, 5, 7});
  }

  TEST_CASE("field shape mismatch is rejected") {
    const Grid3 a = Grid3::cube(8, 1.0);
    const Grid3 b = Grid3::cube(8, 2.0);
    ScalarField fa(a);
    CHECK_THROWS_AS(fa += ScalarField(b), ShapeError);
    CHECK_THROWS_AS(ScalarField(a, std::vector<double>(7)), ShapeError);
  }

  TEST_CASE("embed and crop are inverse") {
    const Grid3 g = Grid3::cube(8, 1.0);
    const ScalarField f = sample(g, [](const Vec3& x) { return x.x + 2 * x.y - x.z; });
    const ScalarField e = embed(f, 2);
    CHECK(e.grid().n()[0] == 12);
    CHECK(e.grid().node(2, 2, 2) == g.node(0, 0, 0));
    CHECK(bitwise_equal(crop(e, 2), f));
  }
}

TEST_SUITE("reduce") {
  TEST_CASE("integral of zero is zero") {
    CHECK(integrate(ScalarField(Grid3::cube(16, 3.0))) == 0.0);
  }

  TEST_CASE("integral of one over 16^3 unit cells is exactly 4096") {
    const Grid3 g({16, 16, 16}, {1, 1, 1}, {0, 0, 0});
    ScalarField f(g);
    std::fill(f.data().begin(), f.data().end(), 1.0);
    CHECK(integrate(f) == 4096.0);
  }

  TEST_CASE("normalized gaussian integrates to one") {
    const Grid3 g = Grid3::cube(64, 8.0);
    const ScalarField f = sample(g, [](const Vec3& x) { return gauss_charge(x, {}, 1.0, 1.0); });
    CHECK(std::abs(integrate(f) - 1.0) <= 1e-12);
  }

  TEST_CASE("non-finite input names the offending node") {
    const Grid3 g = Grid3::cube(8, 1.0);
    ScalarField f(g);
    f(0, g.index(3, 4, 5)) = std::numeric_limits<double>::quiet_NaN();
    f(0, g.index(6, 6, 6)) = std::numeric_limits<double>::infinity();
    try {
      integrate(f);
      FAIL("expected NonFiniteError");
    } catch (const NonFiniteError& e) {
      CHECK(e.node() == std::array<int, 3>{3, 4, 5});
      CHECK(e.component() == 0);
    }
    VectorField v(g);
    v(2, g.index(1, 2, 3)) = std::numeric_limits<double>::infinity();
    try {
      integrate(v);
      FAIL("expected NonFiniteError");
    } catch (const NonFiniteError& e) {
      CHECK(e.node() == std::array<int, 3>{1, 2, 3});
      CHECK(e.component() == 2);
    }
  }

  TEST_CASE("integration is linear") {
    const Grid3 g = Grid3::cube(24, 5.0);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 5; ++trial) {
      ScalarField f(g), h(g);
      for (auto& v : f.data()) v = u(rng);
      for (auto& v : h.data()) v = u(rng);
      const double a = u(rng) * 3.0, b = u(rng) * 3.0;
      const double lhs = integrate(a * f + b * h);
      const double rhs = a * integrate(f) + b * integrate(h);
      const double scale = std::abs(a * integrate(f)) + std::abs(b * integrate(h)) + l2_norm(f);
      CHECK(std::abs(lhs - rhs) <= 1e-13 * scale);
    }
  }

  TEST_CASE("reductions are bitwise identical across thread counts") {
    const Grid3 g = Grid3::cube(32, 4.0);
    std::mt19937_64 rng(11);
    std::normal_distribution<double> n01;
    ScalarField f(g);
    for (auto& v : f.data()) v = n01(rng) * 1e3;
    std::vector<double> results;
    for (int t : {1, 2, 3, 8}) {
      set_thread_count(t);
      results.push_back(integrate(f));
      results.push_back(pairwise_sum(f.data()));
      results.push_back(l2_norm(f));
    }
    set_thread_count(0);
    for (std::size_t i = 3; i < results.size(); ++i) CHECK(bitwise_equal(results[i], results[i % 3]));
  }

  TEST_CASE("pairwise sum is exact for representable partial sums") {
    std::vector<double> v(1000, 0.5);
    CHECK(pairwise_sum(v) == 500.0);
    std::vector<cplx> w(64, cplx(1.0, -2.0));
    CHECK(pairwise_sum(w) == cplx(64.0, -128.0));
  }
}

namespace {

VectorField analytic_gradient(const Grid3& g, const Vec3& c, double s) {
  return sample_vec(g, [&](const Vec3& x) { return (-1.0 / (s * s)) * gauss(x, c, s) * (x - c); });
}

double curl_of_gradient_defect(int n) {
  const Grid3 g = Grid3::cube(n, 8.0);
  const VectorField v = analytic_gradient(g, {0.3, -0.2, 0.1}, 1.5);
  return interior_max_abs(curl(v), 4) / max_abs(v);
}

}  // namespace

TEST_SUITE("diff") {
  TEST_CASE("gradient of a constant vanishes") {
    const Grid3 g = Grid3::cube(16, 4.0);
    ScalarField f(g);
    std::fill(f.data().begin(), f.data().end(), 2.5);
    CHECK(max_abs(gradient(f, Scheme::spectral)) <= 1e-12);
    // fd4 extends by zero outside the box, so only nodes whose stencil stays inside vanish.
    CHECK(interior_max_abs(gradient(f, Scheme::fd4), kStencilHalfWidth) == 0.0);
  }

  TEST_CASE("curl of an analytic gradient vanishes at fourth order") {
    const double coarse = curl_of_gradient_defect(32);
    const double fine = curl_of_gradient_defect(64);
    CHECK(fine < coarse);
    CHECK(coarse / fine >= 12.0);
    CHECK(coarse / fine <= 20.0);
  }

  TEST_CASE("spectral derivative of a periodic plane wave is exact") {
    const Grid3 g = Grid3::cube(16, 4.0);
    const double L = 16 * g.h().x;
    const Vec3 k{2 * std::numbers::pi / L, 4 * std::numbers::pi / L, -6 * std::numbers::pi / L};
    const ScalarField f = sample(g, [&](const Vec3& x) { return std::sin(dot(k, x)); });
    const VectorField want = sample_vec(g, [&](const Vec3& x) { return std::cos(dot(k, x)) * k; });
    CHECK(max_abs_diff(gradient(f, Scheme::spectral), want) <= 1e-12);
  }

  TEST_CASE("divergence of a curl vanishes") {
    const Grid3 g = Grid3::cube(32, 6.0);
    const VectorField v = sample_vec(g, [](const Vec3& x) {
      const double w = gauss(x, {0.2, 0.0, -0.3}, 1.2);
      return Vec3{w * x.y, w * x.z * x.z, w * (1.0 + x.x)};
    });
    CHECK(interior_max_abs(divergence(curl(v)), 2 * kStencilHalfWidth) <= 1e-12 * max_abs(v));

    const double L = 32 * g.h().x;
    const double k = 2 * std::numbers::pi / L;
    const VectorField p = sample_vec(g, [&](const Vec3& x) {
      return Vec3{std::sin(k * x.y), std::cos(2 * k * x.z), std::sin(k * (x.x + x.y))};
    });
    CHECK(max_abs(divergence(curl(p, Scheme::spectral), Scheme::spectral)) <= 1e-12);
  }

  TEST_CASE("differential operators are linear") {
    const Grid3 g = Grid3::cube(24, 5.0);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    VectorField a(g), b(g);
    for (auto& v : a.data()) v = u(rng);
    for (auto& v : b.data()) v = u(rng);
    for (Scheme s : {Scheme::fd4, Scheme::spectral}) {
      const VectorField lhs = curl(2.0 * a + b, s);
      const VectorField rhs = 2.0 * curl(a, s) + curl(b, s);
      CHECK(max_abs_diff(lhs, rhs) <= 1e-12 * max_abs(rhs));
      const ScalarField dl = divergence(a - 3.0 * b, s);
      const ScalarField dr = divergence(a, s) - 3.0 * divergence(b, s);
      CHECK(max_abs_diff(dl, dr) <= 1e-12 * max_abs(dr));
      const ScalarField f = component_of(a, 0), h = component_of(b, 1);
      CHECK(max_abs_diff(gradient(f + h, s), gradient(f, s) + gradient(h, s)) <=
            1e-12 * max_abs(gradient(f, s)));
    }
  }

  TEST_CASE("scheme names and axis checks") {
    CHECK(parse_scheme("fd4") == Scheme::fd4);
    CHECK(parse_scheme("spectral") == Scheme::spectral);
    CHECK(to_string(Scheme::spectral) == "spectral");
    CHECK_THROWS_AS(parse_scheme("fd2"), Error);
    const Grid3 g = Grid3::cube(8, 1.0);
    std::vector<double> in(g.size()), out(g.size());
    CHECK_THROWS_AS(derivative(in, out, g, 3, Scheme::fd4), ShapeError);
  }
}

namespace {

std::string amf_bytes(const std::string& header, std::size_t payload_doubles, double fill = 0.0) {
  std::string s = "AMF1\n" + header;
  s.push_back('\0');
  std::vector<double> v(payload_doubles, fill);
  s.append(reinterpret_cast<const char*>(v.data()), v.size() * sizeof(double));
  return s;
}

FormatError::Code read_error(const std::string& bytes) {
  std::istringstream in(bytes);
  try {
    read_field(in);
  } catch (const FormatError& e) {
    return e.code();
  }
  FAIL("expected FormatError");
  return FormatError::Code::io;
}

const std::string kScalarHeader =
    R"({"n":[8,8,8],"h":[1,1,1],"origin":[0,0,0],"kind":"scalar_real","components":1})";

}  // namespace

TEST_SUITE("amf") {
  TEST_CASE("random spinor round-trips bit for bit") {
    const Grid3 g({16, 16, 16}, {0.25, 0.5, 0.75}, {-1.0, 2.0, 3.5});
    SpinorField psi(g);
    std::mt19937_64 rng(5);
    std::normal_distribution<double> n01;
    for (auto& v : psi.data()) v = cplx(n01(rng), n01(rng));
    std::stringstream buf;
    write_field(psi, buf);
    const AnyField back = read_field(buf);
    REQUIRE(std::holds_alternative<SpinorField>(back));
    CHECK(bitwise_equal(std::get<SpinorField>(back), psi));

    const auto path = std::filesystem::temp_directory_path() / "amlab_unit_roundtrip.amf";
    write_field(psi, path);
    CHECK(bitwise_equal(read_field_as<SpinorField>(path), psi));
    CHECK_THROWS_AS(read_field_as<ScalarField>(path), FormatError);
    std::filesystem::remove(path);
  }

  TEST_CASE("every kind round-trips") {
    const Grid3 g = Grid3::cube(8, 1.0);
    ScalarField s = sample(g, [](const Vec3& x) { return x.x; });
    ComplexField c(g);
    for (std::size_t i = 0; i < g.size(); ++i) c(0, i) = cplx(double(i), -double(i));
    VectorField v = sample_vec(g, [](const Vec3& x) { return Vec3{x.z, x.y, x.x}; });
    for (const AnyField& f : {AnyField(s), AnyField(c), AnyField(v)}) {
      std::stringstream buf;
      write_field(f, buf);
      const AnyField back = read_field(buf);
      CHECK(kind_of(back) == kind_of(f));
      CHECK(grid_of(back) == g);
    }
  }

  TEST_CASE("header kind with the payload of another kind is a size mismatch") {
    CHECK(read_error(amf_bytes(kScalarHeader, 3 * 512)) == FormatError::Code::size_mismatch);
    const std::string wrong_components =
        R"({"n":[8,8,8],"h":[1,1,1],"origin":[0,0,0],"kind":"vector_real","components":1})";
    CHECK(read_error(amf_bytes(wrong_components, 512)) == FormatError::Code::size_mismatch);
  }

  TEST_CASE("truncated payload is a payload-size error") {
    std::string bytes = amf_bytes(kScalarHeader, 512);
    bytes.resize(bytes.size() - 5);
    CHECK(read_error(bytes) == FormatError::Code::payload_size);
  }

  TEST_CASE("corrupt files raise distinct errors") {
    std::string bad_magic = amf_bytes(kScalarHeader, 512);
    bad_magic[3] = '2';
    CHECK(read_error(bad_magic) == FormatError::Code::magic);
    CHECK(read_error(amf_bytes("{not json", 512)) == FormatError::Code::header);
    CHECK(read_error(amf_bytes(R"({"n":[8,8,8]})", 512)) == FormatError::Code::header);
    CHECK(read_error(amf_bytes(kScalarHeader, 512, std::numeric_limits<double>::quiet_NaN())) ==
          FormatError::Code::non_finite);
    CHECK(read_error("AMF1\n{}") == FormatError::Code::header);
    try {
      read_field(std::filesystem::path("/nonexistent/dir/file.amf"));
      FAIL("expected FormatError");
    } catch (const FormatError& e) {
      CHECK(e.code() == FormatError::Code::io);
    }
  }
}
