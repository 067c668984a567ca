#include "lcert/gridcert/grid.hpp"

#include "lcert/geom/io.hpp"
#include "lcert/util/error.hpp"
#include "lcert/util/format.hpp"
#include "lcert/util/parallel.hpp"

#include <fstream>

namespace lcert::gridcert {

std::vector<Vector> make_grid(const GridSpec& spec) {
  if (spec.per_axis < 2) throw Error(ErrorCode::Precondition, "per_axis must be at least 2");
  if (!(spec.b_max > 0.0)) throw Error(ErrorCode::Precondition, "b_max must be positive");
  const double h = spec.b_max / (spec.per_axis - 1);
  std::vector<Vector> pts;
  pts.reserve(static_cast<std::size_t>(spec.per_axis) * static_cast<std::size_t>(spec.per_axis + 1) / 2);
  for (int i = 0; i < spec.per_axis; ++i)
    for (int j = 0; j <= i; ++j) {
      Vector p(2);
      p << i * h, j * h;
      pts.push_back(std::move(p));
    }
  return pts;
}

std::array<Vector, 3> corner_uncertainties(double wb, double ws) {
  if (wb < 0.0 || ws < 0.0) throw Error(ErrorCode::Precondition, "noise bounds must be nonnegative");
  std::array<Vector, 3> w{Vector(2), Vector(2), Vector(2)};
  w[0] << wb, 0.0;
  w[1] << 0.0, ws;
  w[2] << wb, ws;
  return w;
}

PointClass classify_point(const AMRSwitchedSystem& sys, const Vector& x, const Region& target) {
  const auto corners = corner_uncertainties(sys.wb(), sys.ws());
  PointClass pc;
  pc.x = x;
  for (int sigma = 1; sigma <= 2; ++sigma) {
    bool ok = true;
    for (const auto& w : corners) {
      if (!target(sys.retract(sysmodel::step_amr(sys, x, sigma, w)))) {
        ok = false;
        break;
      }
    }
    if (ok) {
      pc.label = Label::Inside;
      pc.mode = sigma;
      return pc;
    }
  }
  return pc;
}

Classification classify_grid(const AMRSwitchedSystem& sys, const std::vector<Vector>& grid, const Region& target) {
  Classification out(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) { out[i] = classify_point(sys, grid[i], target); });
  return out;
}

bool Hull::contains(const Vector& x, double tol) const {
  return geom::Polygon2(vertices).contains(geom::Point2(x(0), x(1)), tol);
}

bool Hull::contains(const Hull& other, double tol) const {
  const geom::Polygon2 poly(vertices);
  for (const auto& v : other.vertices)
    if (!poly.contains(v, tol)) return false;
  return true;
}

Hull hull_of_inside(const Classification& c) {
  std::vector<geom::Point2> pts;
  for (const auto& p : c)
    if (p.label == Label::Inside) pts.emplace_back(p.x(0), p.x(1));
  return Hull{geom::convex_hull_2d(std::move(pts), 1e-9)};
}

namespace {

std::size_t count_inside(const Classification& c) {
  std::size_t n = 0;
  for (const auto& p : c) n += p.label == Label::Inside ? 1 : 0;
  return n;
}

}  // namespace

GridCertificate certify_rccs_grid(const AMRSwitchedSystem& sys, double b0, const GridSpec& spec, double eps) {
  if (!(b0 < spec.b_max)) throw Error(ErrorCode::Precondition, "b0 must be below b_max");
  if (!(b0 >= 0.0)) throw Error(ErrorCode::Precondition, "b0 must be nonnegative");
  if (spec.b_max > sys.params().N) throw Error(ErrorCode::Precondition, "b_max must not exceed N");
  GridCertificate cert;
  cert.b0 = b0;
  cert.eps = eps;
  cert.classification = classify_grid(sys, make_grid(spec), [b0](const Vector& y) { return y(0) <= b0; });
  cert.inside = count_inside(cert.classification);
  if (cert.inside < 3) throw Error(ErrorCode::TooFewInsidePoints, std::to_string(cert.inside) + " Inside points");
  cert.hull = hull_of_inside(cert.classification);
  const double c = b0 + eps;
  std::array<Vector, 3> corners{Vector(2), Vector(2), Vector(2)};
  corners[0] << 0.0, 0.0;
  corners[1] << c, 0.0;
  corners[2] << c, c;
  cert.certified = cert.hull.vertices.size() >= 3;
  for (const auto& v : corners) cert.certified = cert.certified && cert.hull.contains(v);
  return cert;
}

HullLadder grow_domain_grid(const AMRSwitchedSystem& sys, double b0, const GridSpec& spec, int k_max, double eps,
                            bool keep_labels) {
  if (k_max < 1) throw Error(ErrorCode::Precondition, "k_max must be at least 1");
  GridCertificate first = certify_rccs_grid(sys, b0, spec, eps);
  if (!first.certified) throw Error(ErrorCode::Precondition, "grid certification failed for this b0");
  HullLadder out;
  out.seed_b0 = b0;
  const auto grid = make_grid(spec);
  Classification prev = std::move(first.classification);
  out.hulls.push_back(first.hull);
  out.inside_counts.push_back(first.inside);
  if (keep_labels) out.labels.push_back(prev);
  for (int k = 2; k <= k_max; ++k) {
    const Hull target = out.hulls.back();
    Classification cur = classify_grid(sys, grid, [&target](const Vector& y) { return target.contains(y); });
    const std::size_t n = count_inside(cur);
    for (std::size_t i = 0; i < cur.size(); ++i)
      if (prev[i].label == Label::Inside && cur[i].label != Label::Inside) ++out.nesting_violations;
    if (n == out.inside_counts.back()) {
      out.fixed_point = true;
      break;
    }
    Hull h = hull_of_inside(cur);
    if (!h.contains(target)) ++out.nesting_violations;
    out.hulls.push_back(std::move(h));
    out.inside_counts.push_back(n);
    if (keep_labels) out.labels.push_back(cur);
    prev = std::move(cur);
  }
  return out;
}

void write_classification_csv(const Classification& c, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << "b,s,label,mode\n";
  for (const auto& p : c)
    out << format_double(p.x(0)) << ',' << format_double(p.x(1)) << ','
        << (p.label == Label::Inside ? "inside" : "outside") << ',' << (p.mode ? *p.mode : 0) << '\n';
}

nlohmann::json to_json(const Hull& h) {
  geom::VPolytope V;
  for (const auto& v : h.vertices) V.vertices.emplace_back(v);
  return geom::to_json(V);
}

}  // namespace lcert::gridcert
