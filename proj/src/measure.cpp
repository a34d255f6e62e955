#include "kappa/measure.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

namespace kappa {

const char* to_string(MeasureErrc code) {
  switch (code) {
    case MeasureErrc::DimensionMismatch: return "DimensionMismatch";
    case MeasureErrc::EmptyPins: return "EmptyPins";
    case MeasureErrc::MissingVertexAssignment: return "MissingVertexAssignment";
    case MeasureErrc::BadGeneratorParams: return "BadGeneratorParams";
    case MeasureErrc::CannotSeparate: return "CannotSeparate";
  }
  return "Unknown";
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// 53 random mantissa bits in [0, 1).
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  const std::size_t workers = std::min<std::size_t>(lab_threads(), std::max<std::size_t>(1, n / 2048));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (std::thread& t : pool) t.join();
}

void fill_point(const GeneratorSpec& spec, std::mt19937_64& rng, double* out) {
  switch (spec.kind) {
    case GeneratorSpec::Kind::UniformCube:
      for (int a = 0; a < spec.dim; ++a) out[a] = uniform01(rng);
      return;
    case GeneratorSpec::Kind::CantorProduct: {
      const double keep = 1.0 - spec.ratio;
      for (int a = 0; a < spec.dim; ++a) {
        double x = 0.0;
        double scale = 1.0;
        for (int level = 0; level < spec.levels; ++level) {
          if (rng() >> 63) x += keep * scale;
          scale *= spec.ratio;
        }
        out[a] = x + scale * uniform01(rng);
      }
      return;
    }
    case GeneratorSpec::Kind::Sphere: {
      double norm2 = 0.0;
      for (int a = 0; a < spec.dim; a += 2) {
        const double u1 = 1.0 - uniform01(rng);
        const double u2 = uniform01(rng);
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        out[a] = r * std::cos(theta);
        if (a + 1 < spec.dim) out[a + 1] = r * std::sin(theta);
      }
      for (int a = 0; a < spec.dim; ++a) norm2 += out[a] * out[a];
      const double scale = spec.radius / std::sqrt(norm2);
      for (int a = 0; a < spec.dim; ++a) {
        out[a] = out[a] * scale + (spec.center.empty() ? 0.0 : spec.center[a]);
      }
      return;
    }
  }
}

std::string shortest(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double parse_number(const std::string& text) {
  double value = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw MeasureError(MeasureErrc::BadGeneratorParams, "bad number '" + text + "'");
  }
  return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, sep)) parts.push_back(part);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

std::vector<std::int64_t> cell_keys(const PointMatrix<double>& samples, double delta) {
  std::vector<std::int64_t> keys(static_cast<std::size_t>(samples.size()));
  const Eigen::Index rows = samples.rows();
  for (Eigen::Index c = 0; c < samples.cols(); ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) {
      keys[static_cast<std::size_t>(c * rows + r)] =
          static_cast<std::int64_t>(std::floor(samples(r, c) / delta));
    }
  }
  return keys;
}

PointCloud subset(const PointCloud& cloud, const std::vector<Eigen::Index>& columns) {
  PointCloud out{cloud.dim, PointMatrix<double>(cloud.dim, static_cast<Eigen::Index>(columns.size())),
                 cloud.generator, cloud.seed};
  for (std::size_t i = 0; i < columns.size(); ++i) {
    out.points.col(static_cast<Eigen::Index>(i)) = cloud.points.col(columns[i]);
  }
  return out;
}

}  // namespace

GeneratorSpec GeneratorSpec::uniform(int dim) {
  GeneratorSpec s;
  s.kind = Kind::UniformCube;
  s.dim = dim;
  return s;
}

GeneratorSpec GeneratorSpec::cantor(int dim, double ratio, int levels) {
  GeneratorSpec s;
  s.kind = Kind::CantorProduct;
  s.dim = dim;
  s.ratio = ratio;
  s.levels = levels;
  return s;
}

GeneratorSpec GeneratorSpec::sphere(int dim, double radius, std::vector<double> center) {
  GeneratorSpec s;
  s.kind = Kind::Sphere;
  s.dim = dim;
  s.radius = radius;
  s.center = std::move(center);
  return s;
}

double GeneratorSpec::dimension() const {
  switch (kind) {
    case Kind::UniformCube: return dim;
    case Kind::CantorProduct: return dim * std::log(2.0) / std::log(1.0 / ratio);
    case Kind::Sphere: return dim - 1;
  }
  return 0.0;
}

void validate(const GeneratorSpec& spec) {
  auto bad = [](const std::string& what) {
    throw MeasureError(MeasureErrc::BadGeneratorParams, what);
  };
  if (spec.dim < 1) bad("dimension must be at least 1");
  if (spec.kind == GeneratorSpec::Kind::CantorProduct) {
    if (!(spec.ratio > 0.0 && spec.ratio <= 0.5)) bad("cantor ratio must lie in (0, 1/2]");
    if (spec.levels < 1 || spec.levels > 60) bad("cantor levels must lie in [1, 60]");
  }
  if (spec.kind == GeneratorSpec::Kind::Sphere) {
    if (!(spec.radius > 0.0)) bad("sphere radius must be positive");
    if (!spec.center.empty() && static_cast<int>(spec.center.size()) != spec.dim) {
      bad("sphere center has the wrong dimension");
    }
  }
}

GeneratorSpec parse_generator(const std::string& text, int dim) {
  const std::vector<std::string> parts = split(text, ':');
  GeneratorSpec spec;
  if (parts.empty()) throw MeasureError(MeasureErrc::BadGeneratorParams, "empty generator");
  const std::string& name = parts[0];
  if ((name == "uniform" || name == "uniform-cube") && parts.size() == 1) {
    spec = GeneratorSpec::uniform(dim);
  } else if ((name == "cantor" || name == "cantor-product") && parts.size() >= 2 &&
             parts.size() <= 3) {
    const int levels = parts.size() == 3 ? static_cast<int>(parse_number(parts[2])) : 8;
    spec = GeneratorSpec::cantor(dim, parse_number(parts[1]), levels);
  } else if (name == "sphere" && parts.size() >= 2 && parts.size() <= 3) {
    std::vector<double> center;
    if (parts.size() == 3) {
      for (const std::string& c : split(parts[2], ',')) center.push_back(parse_number(c));
    }
    spec = GeneratorSpec::sphere(dim, parse_number(parts[1]), std::move(center));
  } else {
    throw MeasureError(MeasureErrc::BadGeneratorParams, "unknown generator '" + text + "'");
  }
  validate(spec);
  return spec;
}

std::string describe(const GeneratorSpec& spec) {
  switch (spec.kind) {
    case GeneratorSpec::Kind::UniformCube: return "uniform";
    case GeneratorSpec::Kind::CantorProduct:
      return "cantor:" + shortest(spec.ratio) + ":" + std::to_string(spec.levels);
    case GeneratorSpec::Kind::Sphere: {
      std::string out = "sphere:" + shortest(spec.radius);
      for (std::size_t i = 0; i < spec.center.size(); ++i) {
        out += (i == 0 ? ":" : ",") + shortest(spec.center[i]);
      }
      return out;
    }
  }
  return "unknown";
}

std::uint64_t point_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ index);
}

unsigned lab_threads() {
  if (const char* env = std::getenv("KAPPA_LAB_THREADS")) {
    const long value = std::strtol(env, nullptr, 10);
    if (value >= 1) return static_cast<unsigned>(value);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

PointCloud sample_cloud(const GeneratorSpec& spec, std::size_t count, std::uint64_t seed) {
  validate(spec);
  if (count < 1) throw MeasureError(MeasureErrc::BadGeneratorParams, "count must be at least 1");
  PointCloud cloud{spec.dim, PointMatrix<double>(spec.dim, static_cast<Eigen::Index>(count)), spec,
                   seed};
  double* data = cloud.points.data();
  parallel_for(count, [&](std::size_t i) {
    std::mt19937_64 rng(point_seed(seed, i));
    fill_point(spec, rng, data + i * static_cast<std::size_t>(spec.dim));
  });
  return cloud;
}

SeparatedFamily split_separated(const PointCloud& cloud, int l, double gap) {
  if (l < 1) throw MeasureError(MeasureErrc::CannotSeparate, "need at least one group");
  if (!(gap >= 0.0)) throw MeasureError(MeasureErrc::CannotSeparate, "gap must be nonnegative");
  if (l == 1) return {{cloud}, gap};
  const Eigen::Index n = cloud.size();
  if (n < l) throw MeasureError(MeasureErrc::CannotSeparate, "fewer points than groups");

  std::vector<double> xs(cloud.points.row(0).begin(), cloud.points.row(0).end());
  std::sort(xs.begin(), xs.end());
  // Cut j sits in the widest spacing between sorted coordinates whose rank lies
  // within half a slab of the j-th quantile; the windows are disjoint.
  const std::size_t count = xs.size();
  const std::size_t slabs = static_cast<std::size_t>(l);
  std::vector<double> cuts;
  for (std::size_t j = 1; j < slabs; ++j) {
    const std::size_t lo = std::max<std::size_t>(1, (2 * j - 1) * count / (2 * slabs));
    const std::size_t hi = std::min(count - 1, (2 * j + 1) * count / (2 * slabs));
    std::size_t best = lo < hi ? lo : std::clamp<std::size_t>(j * count / slabs, 1, count - 1);
    for (std::size_t i = lo + 1; i < hi; ++i) {
      if (xs[i] - xs[i - 1] > xs[best] - xs[best - 1]) best = i;
    }
    cuts.push_back(0.5 * (xs[best - 1] + xs[best]));
  }

  std::vector<std::vector<Eigen::Index>> groups(static_cast<std::size_t>(l));
  for (Eigen::Index c = 0; c < n; ++c) {
    const double x = cloud.points(0, c);
    bool near_cut = false;
    for (double cut : cuts) near_cut = near_cut || std::abs(x - cut) <= gap / 2;
    if (near_cut) continue;
    const auto slab = std::upper_bound(cuts.begin(), cuts.end(), x) - cuts.begin();
    groups[static_cast<std::size_t>(slab)].push_back(c);
  }

  SeparatedFamily family{{}, gap};
  double previous_max = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < l; ++j) {
    const auto& g = groups[static_cast<std::size_t>(j)];
    if (g.empty()) {
      throw MeasureError(MeasureErrc::CannotSeparate,
                         "group " + std::to_string(j) + " is empty after removing the gap bands");
    }
    PointCloud part = subset(cloud, g);
    const double lo = part.points.row(0).minCoeff();
    if (lo - previous_max < gap) {
      throw MeasureError(MeasureErrc::CannotSeparate, "groups closer than the requested gap");
    }
    previous_max = part.points.row(0).maxCoeff();
    family.clouds.push_back(std::move(part));
  }
  return family;
}

double min_cross_distance(const SeparatedFamily& family) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < family.clouds.size(); ++a) {
    for (std::size_t b = a + 1; b < family.clouds.size(); ++b) {
      const auto& pa = family.clouds[a].points;
      const auto& pb = family.clouds[b].points;
      for (Eigen::Index i = 0; i < pa.cols(); ++i) {
        best = std::min(best, (pb.colwise() - pa.col(i)).colwise().norm().minCoeff());
      }
    }
  }
  return best;
}

ConfigSample sample_configurations(const PinnedGraph& g, EdgeVectorKind phi,
                                   const PointMatrix<double>& pin_points,
                                   const PointMatrix<double>& pool, std::size_t count,
                                   std::uint64_t seed) {
  const auto& pins = g.pins();
  if (pin_points.cols() != static_cast<Eigen::Index>(pins.size())) {
    throw MeasureError(MeasureErrc::MissingVertexAssignment, "one point per pin is required");
  }
  if (g.unpinned_count() > 0 && pool.cols() == 0) {
    throw MeasureError(MeasureErrc::MissingVertexAssignment, "empty point pool");
  }
  if (!pins.empty() && pin_points.rows() != pool.rows()) {
    throw MeasureError(MeasureErrc::DimensionMismatch, "pin points and pool differ in dimension");
  }
  const Eigen::Index dim = pool.rows() > 0 ? pool.rows() : pin_points.rows();

  ConfigSample sample{g, phi, pin_points,
                      PointMatrix<double>(static_cast<Eigen::Index>(g.edge_count()),
                                          static_cast<Eigen::Index>(count)),
                      seed};
  std::vector<Vertex> free;
  for (Vertex v = 1; v <= g.vertex_count(); ++v) {
    if (!g.is_pin(v)) free.push_back(v);
  }
  const auto pool_size = static_cast<std::uint64_t>(pool.cols());
  parallel_for(count, [&](std::size_t i) {
    std::mt19937_64 rng(point_seed(seed, i));
    PointMatrix<double> assignment(dim, g.vertex_count());
    for (std::size_t j = 0; j < pins.size(); ++j) {
      assignment.col(pins[j] - 1) = pin_points.col(static_cast<Eigen::Index>(j));
    }
    for (Vertex v : free) {
      assignment.col(v - 1) = pool.col(static_cast<Eigen::Index>(rng() % pool_size));
    }
    sample.image.col(static_cast<Eigen::Index>(i)) = config_map(g, phi, assignment);
  });
  return sample;
}

ConfigSample sample_configurations(const PinnedGraph& g, const GeneratorSpec& spec,
                                   const ConfigOptions& options) {
  const std::size_t pool_count = options.pool == 0 ? options.count : options.pool;
  const PointCloud cloud = sample_cloud(spec, pool_count, options.seed);
  const int m = static_cast<int>(g.pin_count());
  PointMatrix<double> pin_points(spec.dim, m);
  const std::uint64_t image_seed = point_seed(options.seed, 0x696d616765ULL);
  ConfigSample sample;
  if (m == 0) {
    sample = sample_configurations(g, options.phi, pin_points, cloud.points, options.count,
                                   image_seed);
  } else {
    const SeparatedFamily family = split_separated(cloud, m + 1, options.gap);
    for (int j = 0; j < m; ++j) pin_points.col(j) = family.clouds[j].points.col(0);
    sample = sample_configurations(g, options.phi, pin_points, family.clouds[m].points,
                                   options.count, image_seed);
  }
  sample.seed = options.seed;
  return sample;
}

VolumeEstimate estimate_image_volume(const PointMatrix<double>& samples, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("cell size must be positive");
  const auto k = static_cast<std::size_t>(samples.rows());
  const auto n = static_cast<std::size_t>(samples.cols());
  VolumeEstimate est{delta, 0, 0.0, static_cast<int>(k)};
  if (n == 0) return est;
  const std::vector<std::int64_t> keys = cell_keys(samples, delta);
  std::vector<std::size_t> index(n);
  std::iota(index.begin(), index.end(), std::size_t{0});
  auto less = [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(keys.begin() + a * k, keys.begin() + (a + 1) * k,
                                        keys.begin() + b * k, keys.begin() + (b + 1) * k);
  };
  std::sort(index.begin(), index.end(), less);
  std::size_t distinct = 1;
  for (std::size_t i = 1; i < n; ++i) {
    if (less(index[i - 1], index[i])) ++distinct;
  }
  est.covering_count = distinct;
  est.estimate = static_cast<double>(distinct) * std::pow(delta, static_cast<double>(k));
  return est;
}

StarDensity empirical_star_density(const PointMatrix<double>& pins, const PointCloud& cloud,
                                   EdgeVectorKind kind, double resolution) {
  if (!(resolution > 0.0)) throw std::invalid_argument("resolution must be positive");
  if (pins.cols() == 0) throw MeasureError(MeasureErrc::EmptyPins, "star map needs a pin");
  const Eigen::Index n = cloud.size();
  PointMatrix<double> values(pins.cols(), n);
  for (Eigen::Index i = 0; i < n; ++i) values.col(i) = star_map(pins, cloud.points.col(i), kind);
  const std::vector<std::int64_t> keys = cell_keys(values, resolution);

  std::map<std::vector<std::int64_t>, std::size_t> counts;
  const auto k = static_cast<std::size_t>(pins.cols());
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto at = keys.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(i) * k);
    ++counts[std::vector<std::int64_t>(at, at + static_cast<std::ptrdiff_t>(k))];
  }
  StarDensity density{resolution, counts.size(), 0.0, {}};
  density.cells.reserve(counts.size());
  for (const auto& [cell, count] : counts) {
    const double mass = static_cast<double>(count) / static_cast<double>(n);
    density.max_cell_mass = std::max(density.max_cell_mass, mass);
    density.cells.emplace_back(cell, mass);
  }
  return density;
}

std::string cloud_header(const PointCloud& cloud) {
  return "dim=" + std::to_string(cloud.dim) + " seed=" + std::to_string(cloud.seed) +
         " generator=" + describe(cloud.generator) + " count=" + std::to_string(cloud.size());
}

void write_columns(std::ostream& out, const PointMatrix<double>& points, const std::string& header) {
  out << "# " << header << '\n';
  for (Eigen::Index c = 0; c < points.cols(); ++c) {
    for (Eigen::Index r = 0; r < points.rows(); ++r) {
      if (r > 0) out << ' ';
      out << shortest(points(r, c));
    }
    out << '\n';
  }
}

}  // namespace kappa
