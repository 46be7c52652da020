#include "cshl/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "cshl/errors.hpp"

namespace cshl {
namespace {

static_assert(std::endian::native == std::endian::little, "CSHF I/O assumes a little-endian host");

template <typename T>
void put(std::ostream& out, T value) {
  char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  out.write(bytes, sizeof(T));
}

template <typename T>
T get(std::istream& in) {
  char bytes[sizeof(T)];
  if (!in.read(bytes, sizeof(T))) throw Error("CSHF: truncated stream");
  T value;
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

}  // namespace

void write_field(std::ostream& out, const ScalarField& f) {
  const bool as_complex = !(f.is_real() && f.representation() == Representation::physical);
  out.write("CSHF", 4);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(f.grid().n()));
  put<double>(out, f.grid().length());
  put<std::uint8_t>(out, as_complex ? 1 : 0);
  put<std::uint8_t>(out, static_cast<std::uint8_t>(f.representation()));
  for (const auto& v : f.values()) {
    put<double>(out, v.real());
    if (as_complex) put<double>(out, v.imag());
  }
  if (!out) throw Error("CSHF: write failed");
}

ScalarField read_field(std::istream& in) {
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, "CSHF", 4) != 0) throw Error("CSHF: bad magic");
  const auto n = get<std::uint32_t>(in);
  const auto length = get<double>(in);
  const auto is_complex = get<std::uint8_t>(in);
  const auto rep = get<std::uint8_t>(in);
  if (rep > 1) throw Error("CSHF: unknown representation tag");
  const Grid grid(static_cast<int>(n), length);
  std::vector<cplx> values(grid.size());
  for (auto& v : values) {
    const double re = get<double>(in);
    const double im = is_complex ? get<double>(in) : 0.0;
    v = {re, im};
  }
  return ScalarField(grid, std::move(values), static_cast<Representation>(rep), is_complex == 0);
}

void write_field(const std::filesystem::path& path, const ScalarField& f) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  write_field(out, f);
}

ScalarField read_field(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return read_field(in);
}

}  // namespace cshl
