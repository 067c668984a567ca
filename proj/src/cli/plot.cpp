#include "lcert/cli/plot.hpp"

#include "lcert/geom/io.hpp"
#include "lcert/geom/polygon2d.hpp"
#include "lcert/reach/ladder.hpp"
#include "lcert/util/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace lcert::cli {

using geom::Point2;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr double kSize = 640.0;
constexpr double kMargin = 40.0;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

class Svg {
 public:
  explicit Svg(Eigen::AlignedBox2d world) : world_(world) {
    const Point2 ext = world_.sizes();
    scale_ = (kSize - 2 * kMargin) / std::max(ext.x(), ext.y());
  }

  Point2 map(const Point2& p) const {
    const Point2 d = p - world_.min();
    return {kMargin + d.x() * scale_, kSize - kMargin - d.y() * scale_};
  }

  void polygon(const std::vector<Point2>& v, const std::string& fill, const std::string& stroke, double opacity = 1.0) {
    if (v.size() < 2) return;
    body_ << "<polygon points=\"" << points(v) << "\" fill=\"" << fill << "\" fill-opacity=\"" << fmt(opacity)
          << "\" stroke=\"" << stroke << "\" stroke-width=\"1\"/>\n";
  }

  void polyline(const std::vector<Point2>& v, const std::string& stroke, double width = 0.8, double opacity = 1.0) {
    body_ << "<polyline points=\"" << points(v) << "\" fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\""
          << fmt(width) << "\" stroke-opacity=\"" << fmt(opacity) << "\"/>\n";
  }

  void dot(const Point2& p, double r, const std::string& fill) {
    const Point2 q = map(p);
    body_ << "<circle cx=\"" << fmt(q.x()) << "\" cy=\"" << fmt(q.y()) << "\" r=\"" << fmt(r) << "\" fill=\"" << fill
          << "\"/>\n";
  }

  void title(const std::string& t) {
    body_ << "<text x=\"" << fmt(kMargin) << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">" << t
          << "</text>\n";
  }

  void write(const fs::path& path) const {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(kSize) << "\" height=\"" << fmt(kSize)
        << "\" viewBox=\"0 0 " << fmt(kSize) << ' ' << fmt(kSize) << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << body_.str() << "</svg>\n";
  }

 private:
  std::string points(const std::vector<Point2>& v) const {
    std::string s;
    for (const auto& p : v) {
      const Point2 q = map(p);
      if (!s.empty()) s += ' ';
      s += fmt(q.x()) + "," + fmt(q.y());
    }
    return s;
  }

  Eigen::AlignedBox2d world_;
  double scale_;
  std::ostringstream body_;
};

fs::path need(const fs::path& p) {
  if (!fs::exists(p)) throw Error(ErrorCode::MissingArtifact, p.string());
  return p;
}

json read_json(const fs::path& p) {
  std::ifstream in(need(p));
  return json::parse(in);
}

std::vector<std::vector<double>> read_csv(const fs::path& p) {
  std::ifstream in(need(p));
  std::string line;
  std::getline(in, line);
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      if (cell == "inside") row.push_back(1.0);
      else if (cell == "outside") row.push_back(0.0);
      else row.push_back(std::stod(cell));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<Point2> outline(const geom::HPolytope& P) {
  const auto poly = geom::Polygon2::from_hpolytope(P, 1e-9);
  return poly ? poly->vertices() : std::vector<Point2>{};
}

std::vector<Point2> box_outline(const Eigen::AlignedBox2d& b) {
  return {b.corner(Eigen::AlignedBox2d::BottomLeft), b.corner(Eigen::AlignedBox2d::BottomRight),
          b.corner(Eigen::AlignedBox2d::TopRight), b.corner(Eigen::AlignedBox2d::TopLeft)};
}

Eigen::AlignedBox2d read_X(const fs::path& dir) {
  const json j = read_json(dir / "X.json");
  const auto lo = geom::vector_from_json(j.at("lower"));
  const auto hi = geom::vector_from_json(j.at("upper"));
  return Eigen::AlignedBox2d(Point2(lo(0), lo(1)), Point2(hi(0), hi(1)));
}

const char* mode_color(int mode) {
  static const char* colors[] = {"#bdbdbd", "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
  return colors[std::clamp(mode, 0, 5)];
}

// Dark for low indices, light for high ones.
std::string ramp(std::size_t k, std::size_t n) {
  const double t = n > 1 ? static_cast<double>(k) / static_cast<double>(n - 1) : 0.0;
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(20 + 180 * t), static_cast<int>(60 + 160 * t),
                static_cast<int>(140 + 100 * t));
  return buf;
}

void fig_sets(const fs::path& dir, const fs::path& svg_path) {
  const auto X = read_X(dir);
  const auto ladder = reach::load_ladder(need(dir / "ladder"));
  const auto omega0 = geom::hpolytope_from_json(read_json(dir / "omega0.json"));
  const auto W = geom::hpolytope_from_json(read_json(dir / "W.json"));
  const json er = read_json(dir / "erosion.json");
  Svg svg(X);
  svg.title("domain estimate (blue), W (gray), seed erosion (orange), seed (black)");
  svg.polygon(box_outline(X), "none", "#000000");
  for (const auto& P : reach::domain_approximation(ladder).parts) svg.polygon(outline(P), "#9ecae1", "none");
  svg.polygon(outline(W), "#969696", "none");
  if (!er.is_null()) svg.polygon(outline(geom::hpolytope_from_json(er)), "#fd8d3c", "none");
  svg.polygon(outline(omega0), "none", "#000000");
  svg.write(svg_path);
}

void fig_ladder_linear(const fs::path& dir, const fs::path& svg_path) {
  const auto X = read_X(dir);
  const auto ladder = reach::load_ladder(need(dir / "ladder"));
  Svg svg(X);
  svg.title("controllable-set ladder, shell k shaded dark to light");
  svg.polygon(box_outline(X), "none", "#000000");
  const std::size_t n = ladder.shells.size();
  for (std::size_t k = n; k-- > 0;)
    for (const auto& P : ladder.shells[k].parts) svg.polygon(outline(P), ramp(k, n), "none");
  svg.write(svg_path);
}

std::vector<Point2> hull_points(const json& j) {
  std::vector<Point2> v;
  for (const auto& p : j.at("vertices")) v.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
  return v;
}

Eigen::AlignedBox2d grid_world(const std::vector<std::vector<double>>& rows) {
  Eigen::AlignedBox2d b;
  for (const auto& r : rows) b.extend(Point2(r.at(0), r.at(1)));
  if (b.isEmpty() || b.sizes().maxCoeff() <= 0.0) throw Error(ErrorCode::Precondition, "degenerate grid");
  return b;
}

void fig_ladder_amr(const fs::path& dir, const fs::path& svg_path) {
  const json g = read_json(dir / "hulls.json");
  const auto world = grid_world(read_csv(dir / "classification.csv"));
  Svg svg(world);
  svg.title("grid controllable-set hulls, iteration k dark to light");
  svg.polygon(box_outline(world), "none", "#000000");
  const auto& hulls = g.at("hulls");
  const std::size_t n = hulls.size();
  for (std::size_t k = n; k-- > 0;) svg.polygon(hull_points(hulls.at(k).at("hull")), ramp(k, n), "#ffffff");
  svg.write(svg_path);
}

void fig_grid(const fs::path& dir, const fs::path& svg_path) {
  const auto rows = read_csv(dir / "classification.csv");
  const json hull = read_json(dir / "hull.json");
  const auto world = grid_world(rows);
  Svg svg(world);
  svg.title("grid labels: outside (gray), inside by certifying mode, hull (black)");
  for (const auto& r : rows) svg.dot(Point2(r.at(0), r.at(1)), 1.6, mode_color(r.at(2) > 0.5 ? static_cast<int>(r.at(3)) : 0));
  svg.polygon(hull_points(hull), "none", "#000000");
  svg.write(svg_path);
}

void fig_law(const fs::path& dir, const fs::path& svg_path) {
  const auto X = read_X(dir);
  const auto rows = read_csv(dir / "law.csv");
  Svg svg(X);
  svg.title("switching law: mode per state, gray where undefined");
  svg.polygon(box_outline(X), "none", "#000000");
  for (const auto& r : rows) svg.dot(Point2(r.at(0), r.at(1)), 2.0, mode_color(static_cast<int>(r.at(2))));
  svg.write(svg_path);
}

void fig_trajectories(const fs::path& dir, const fs::path& svg_path) {
  const auto X = read_X(dir);
  const auto ladder = reach::load_ladder(need(dir / "ladder"));
  const int target_k = read_json(dir / "certificate.json").at("target_k").get<int>();
  std::vector<fs::path> files;
  if (fs::is_directory(dir / "trajectories"))
    for (const auto& e : fs::directory_iterator(dir / "trajectories"))
      if (e.path().extension() == ".csv") files.push_back(e.path());
  if (files.empty()) throw Error(ErrorCode::MissingArtifact, (dir / "trajectories").string() + " has no runs");
  std::sort(files.begin(), files.end());
  Svg svg(X);
  svg.title("closed-loop trajectories into the target set (orange)");
  svg.polygon(box_outline(X), "none", "#000000");
  for (const auto& P : reach::domain_approximation(ladder).parts) svg.polygon(outline(P), "#deebf7", "none");
  for (int k = 0; k <= target_k && k <= ladder.max_level(); ++k)
    for (const auto& P : ladder.shells[static_cast<std::size_t>(k)].parts) svg.polygon(outline(P), "#fdae6b", "none");
  for (const auto& f : files) {
    std::vector<Point2> pts;
    for (const auto& r : read_csv(f)) pts.emplace_back(r.at(1), r.at(2));
    svg.polyline(pts, "#08519c", 0.6, 0.5);
    if (!pts.empty()) svg.dot(pts.front(), 2.5, "#000000");
  }
  svg.write(svg_path);
}

}  // namespace

const std::vector<std::string>& figure_names() {
  static const std::vector<std::string> names{"sets", "trajectories", "law", "grid", "ladder"};
  return names;
}

fs::path plot(const fs::path& run_dir, const std::string& figure) {
  const json report = read_json(run_dir / "report.json");
  const std::string kind = report.at("kind").get<std::string>();
  const fs::path svg = run_dir / (figure + ".svg");
  const bool amr = kind == "amr";
  if (figure == "sets" && !amr) fig_sets(run_dir, svg);
  else if (figure == "trajectories" && !amr) fig_trajectories(run_dir, svg);
  else if (figure == "law" && !amr) fig_law(run_dir, svg);
  else if (figure == "grid" && amr) fig_grid(run_dir, svg);
  else if (figure == "ladder") amr ? fig_ladder_amr(run_dir, svg) : fig_ladder_linear(run_dir, svg);
  else throw Error(ErrorCode::Precondition, "figure '" + figure + "' does not apply to a " + kind + " run");
  return svg;
}

}  // namespace lcert::cli
