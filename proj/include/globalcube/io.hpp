#pragma once

#include <filesystem>
#include <iosfwd>

#include "globalcube/cube.hpp"
#include "globalcube/embed.hpp"
#include "globalcube/fourier.hpp"
#include "globalcube/permutation.hpp"

namespace globalcube::io {

// Text formats. Every reader skips blank lines and '#' comments (the
// coefficient CSV keeps its "# n=.. p=.." header line) and throws ParseError
// with a line number on malformed input.
//
//   cube n=<dim>      then one lowercase hex mask per line, bit 0 = coordinate 1
//   perm n=<n>        then one permutation per line, space-separated images
//   bitmat n=<n>      then n rows of n characters '0'/'1'

cube::CubeFamily read_cube_family(std::istream& in);
void write_cube_family(std::ostream& out, const cube::CubeFamily& family);

families::PermFamily read_perm_family(std::istream& in);
void write_perm_family(std::ostream& out, const families::PermFamily& family);

embed::BitMatrix read_bit_matrix(std::istream& in);
void write_bit_matrix(std::ostream& out, const embed::BitMatrix& x);

// "# n=<n> p=<p>", then "subset,coefficient", then one row per subset.
fourier::FourierCoeffs read_coefficients_csv(std::istream& in);
void write_coefficients_csv(std::ostream& out, const fourier::FourierCoeffs& c);

// Path versions; unreadable or unwritable files raise IoError.
cube::CubeFamily load_cube_family(const std::filesystem::path& path);
families::PermFamily load_perm_family(const std::filesystem::path& path);
embed::BitMatrix load_bit_matrix(const std::filesystem::path& path);

}  // namespace globalcube::io
