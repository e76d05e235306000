#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "divmbest/diversity.hpp"
#include "divmbest/energy_model.hpp"

namespace divmbest {

/// Diversity as written in an instance header.
struct DiversitySpec {
  DiversityKind kind = DiversityKind::hamming;
  int M = 1;
  double p = 1.0;
  /// Δ(0..M) for custom measures.
  std::vector<double> values;

  DiversityMeasure measure() const;
};

struct GridDims {
  int rows = 0;
  int cols = 0;
};

/// Text instance format, version 1:
///
///   divmbest-instance 1
///   nodes <n>
///   edges <m>
///   scale <S>
///   [grid <rows> <cols>]
///   [diversity hamming <M> | linear <M> | power <M> <p> | custom <M> <Δ0> … <ΔM>]
///   [lambda <λ>]
///   unary
///   <v> <θ_v(0)> <θ_v(1)>            (n lines, v ascending)
///   pairwise
///   <u> <v> <θ00> <θ01> <θ10> <θ11>  (m lines)
///   end
///
/// Lines starting with '#' are comments. Reals are written in shortest
/// round-trip form, so write∘read∘write is byte-identical.
struct InstanceFile {
  EnergyModel model;
  std::optional<GridDims> grid;
  std::optional<DiversitySpec> diversity;
  std::optional<double> lambda;
  /// Filled on read; a non-submodular model still loads.
  SubmodularityCertificate submodularity;
};

InstanceFile read_instance(std::istream& in);
InstanceFile read_instance(const std::filesystem::path& path);
void write_instance(std::ostream& out, const InstanceFile& instance);
void write_instance(const std::filesystem::path& path, const InstanceFile& instance);

/// Shortest decimal text that reads back to the same double.
std::string format_real(double value);

/// One labeling per line as a row of '0'/'1' characters.
void write_labelings(std::ostream& out, std::span<const Labeling> tuple);
LabelingTuple read_labelings(std::istream& in);
LabelingTuple read_labelings(const std::filesystem::path& path);

/// Plain-text PGM (P2), 0 for label 0 and 255 for label 1.
void write_pgm(std::ostream& out, const Labeling& y, GridDims dims);

}  // namespace divmbest
