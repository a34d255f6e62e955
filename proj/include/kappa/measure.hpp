#ifndef KAPPA_MEASURE_HPP
#define KAPPA_MEASURE_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "kappa/edge_vector.hpp"
#include "kappa/graph.hpp"

namespace kappa {

enum class MeasureErrc {
  DimensionMismatch,
  EmptyPins,
  MissingVertexAssignment,
  BadGeneratorParams,
  CannotSeparate
};

class MeasureError : public std::runtime_error {
 public:
  MeasureError(MeasureErrc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  MeasureErrc code() const noexcept { return code_; }

 private:
  MeasureErrc code_;
};

const char* to_string(MeasureErrc code);

/// Points are stored as columns.
template <typename Scalar>
using PointMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using PointVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar phi_eval(EdgeVectorKind kind, const Eigen::MatrixBase<DerivedA>& a,
                                   const Eigen::MatrixBase<DerivedB>& b) {
  if (a.size() != b.size()) {
    throw MeasureError(MeasureErrc::DimensionMismatch, "points have different dimensions");
  }
  if (kind == EdgeVectorKind::Euclidean) return (a - b).norm();
  return a.dot(b);
}

/// Coordinate i is phi(pins.col(i), y).
template <typename DerivedP, typename DerivedY>
PointVector<typename DerivedP::Scalar> star_map(const Eigen::MatrixBase<DerivedP>& pins,
                                                const Eigen::MatrixBase<DerivedY>& y,
                                                EdgeVectorKind kind) {
  if (pins.cols() == 0) throw MeasureError(MeasureErrc::EmptyPins, "star map needs a pin");
  if (pins.rows() != y.size()) {
    throw MeasureError(MeasureErrc::DimensionMismatch, "pins and point have different dimensions");
  }
  PointVector<typename DerivedP::Scalar> out(pins.cols());
  for (Eigen::Index i = 0; i < pins.cols(); ++i) out(i) = phi_eval(kind, pins.col(i), y);
  return out;
}

/// Column v-1 of `assignment` is the point placed at vertex v. Output follows
/// the canonical (sorted) edge order of `g`.
template <typename Derived>
PointVector<typename Derived::Scalar> config_map(const PinnedGraph& g, EdgeVectorKind kind,
                                                 const Eigen::MatrixBase<Derived>& assignment) {
  if (assignment.cols() < g.vertex_count()) {
    throw MeasureError(MeasureErrc::MissingVertexAssignment,
                       "assignment covers " + std::to_string(assignment.cols()) + " of " +
                           std::to_string(g.vertex_count()) + " vertices");
  }
  const auto& edges = g.edges();
  PointVector<typename Derived::Scalar> out(static_cast<Eigen::Index>(edges.size()));
  for (std::size_t i = 0; i < edges.size(); ++i) {
    out(static_cast<Eigen::Index>(i)) =
        phi_eval(kind, assignment.col(edges[i].u - 1), assignment.col(edges[i].v - 1));
  }
  return out;
}

struct GeneratorSpec {
  enum class Kind { UniformCube, CantorProduct, Sphere };

  Kind kind = Kind::UniformCube;
  int dim = 2;
  double ratio = 0.25;  // cantor-product
  int levels = 8;       // cantor-product
  double radius = 1.0;  // sphere
  std::vector<double> center;  // sphere; empty means the origin

  static GeneratorSpec uniform(int dim);
  static GeneratorSpec cantor(int dim, double ratio, int levels);
  static GeneratorSpec sphere(int dim, double radius, std::vector<double> center = {});

  /// Hausdorff dimension of the limiting set.
  double dimension() const;
};

/// Accepts `uniform`, `cantor:RATIO:LEVELS` and `sphere:RADIUS[:c1,c2,...]`.
GeneratorSpec parse_generator(const std::string& text, int dim);
/// Round-trips through parse_generator.
std::string describe(const GeneratorSpec& spec);
void validate(const GeneratorSpec& spec);

struct PointCloud {
  int dim = 0;
  PointMatrix<double> points;  // dim x count
  GeneratorSpec generator;
  std::uint64_t seed = 0;

  Eigen::Index size() const { return points.cols(); }
};

/// Per-point seed for index `index` of a stream keyed by `seed`.
std::uint64_t point_seed(std::uint64_t seed, std::uint64_t index);

/// Worker count from KAPPA_LAB_THREADS, else hardware concurrency.
unsigned lab_threads();

/// Point `index` depends only on (spec, seed, index).
PointCloud sample_cloud(const GeneratorSpec& spec, std::size_t count, std::uint64_t seed);

struct SeparatedFamily {
  std::vector<PointCloud> clouds;
  double min_gap = 0.0;
};

/// Cuts the cloud into `l` slabs along the first coordinate, one cut near each
/// j/l quantile, and drops points within gap/2 of each cut.
SeparatedFamily split_separated(const PointCloud& cloud, int l, double gap);

/// Smallest distance between points of different clouds.
double min_cross_distance(const SeparatedFamily& family);

struct ConfigSample {
  PinnedGraph graph;
  EdgeVectorKind phi = EdgeVectorKind::Euclidean;
  PointMatrix<double> pin_points;  // dim x m, column i for pins()[i]
  PointMatrix<double> image;       // |E| x count
  std::uint64_t seed = 0;
};

struct ConfigOptions {
  std::size_t count = 10000;
  std::size_t pool = 0;  // cloud size; 0 means `count`
  double gap = 0.05;
  std::uint64_t seed = 1;
  EdgeVectorKind phi = EdgeVectorKind::Euclidean;
};

/// Images of the configuration map. Pins sit at the first point of the first
/// m slabs of a separated split; free vertices draw from the last slab.
ConfigSample sample_configurations(const PinnedGraph& g, const GeneratorSpec& spec,
                                   const ConfigOptions& options);

/// Images with caller-chosen pin points and free points drawn from `pool`.
ConfigSample sample_configurations(const PinnedGraph& g, EdgeVectorKind phi,
                                   const PointMatrix<double>& pin_points,
                                   const PointMatrix<double>& pool, std::size_t count,
                                   std::uint64_t seed);

struct VolumeEstimate {
  double delta = 0.0;
  std::size_t covering_count = 0;
  double estimate = 0.0;
  int dimension = 0;  // K
};

/// Distinct half-open delta-cells hit, anchored at the origin.
VolumeEstimate estimate_image_volume(const PointMatrix<double>& samples, double delta);

struct StarDensity {
  double resolution = 0.0;
  std::size_t support_count = 0;
  double max_cell_mass = 0.0;
  /// Occupied cells in lexicographic order with their mass.
  std::vector<std::pair<std::vector<std::int64_t>, double>> cells;
};

StarDensity empirical_star_density(const PointMatrix<double>& pins, const PointCloud& cloud,
                                   EdgeVectorKind kind, double resolution);

/// Columnar dump: a `#` header line, then one point per line.
void write_columns(std::ostream& out, const PointMatrix<double>& points, const std::string& header);
std::string cloud_header(const PointCloud& cloud);

}  // namespace kappa

#endif  // KAPPA_MEASURE_HPP
