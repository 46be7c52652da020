#pragma once

#include <filesystem>
#include <iosfwd>

#include "cshl/field.hpp"

namespace cshl {

// CSHF field snapshot, little-endian:
//   char[4] "CSHF", u32 n, f64 L, u8 is_complex, u8 representation,
//   then n*n samples in row-major order, as (re, im) f64 pairs when
//   is_complex is set and as single f64 values otherwise.
// Real-flagged physical fields are written as f64 singletons; everything else
// is written complex.

void write_field(std::ostream& out, const ScalarField& f);
ScalarField read_field(std::istream& in);

void write_field(const std::filesystem::path& path, const ScalarField& f);
ScalarField read_field(const std::filesystem::path& path);

}  // namespace cshl
