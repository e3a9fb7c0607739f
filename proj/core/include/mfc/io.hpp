#pragma once

// Text formats: the problem file read by the command-line tool and the
// matrix-factorization file it writes.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mfc/dgmf.hpp"
#include "mfc/spin.hpp"

namespace mfc::io {

/// Parsed problem file.
///
///   [field]      order = N
///   [potential]  variables, weights, degree, W
///   [group]      named generators, J, J_sqrt (matrices over Q(zeta_N))
///   [curve]      component / marking / node blocks
///   [koszul]     alpha, beta
///   [dgscheme]   odd, weights, d(e) = ..., f
///   [points]     p = a, b, ...
struct Document {
  FieldPtr field;
  RingPtr ring;
  std::optional<Poly> w;
  std::optional<int> d;
  std::vector<std::pair<std::string, GroupElement>> group;
  std::optional<GroupElement> j;
  std::optional<GroupElement> j_sqrt;
  bool has_curve = false;
  spin::SpinCurveSpec curve;  // ring, W, group and J are always copied in
  std::optional<std::pair<std::vector<Poly>, std::vector<Poly>>> koszul;
  std::optional<DgSchemePresentation> scheme;
  std::optional<DgFunction> homotopy;
  std::vector<std::vector<Scalar>> points;
};

Document parse_document(std::string_view text);
Document read_document(const std::filesystem::path& path);

/// Header lines (field, variables, weights, potential, generators, notes)
/// followed by delta0 and delta1, one bracketed row per line.
std::string write_mf(const MatrixFactorization& m, const std::vector<std::string>& notes = {});
MatrixFactorization parse_mf(std::string_view text);
MatrixFactorization read_mf(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
/// Write to a sibling temporary file, then rename over the target.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace mfc::io
