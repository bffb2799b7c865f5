#include "pcmod/cli/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace pcmod::cli {

using nlohmann::json;

std::string format_double(double x) { return fmt::format("{:.17g}", x); }

namespace {

void row(std::string& out, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) out += ',';
    out += format_double(v);
    first = false;
  }
  out += '\n';
}

constexpr double kPanel = 300.0;
constexpr double kRadius = 120.0;

void panel(std::string& svg, double x0, const char* horizontal, const std::vector<BlochVector>& path,
           const std::vector<BlochVector>& markers, bool use_v) {
  const double cx = x0 + kPanel / 2.0;
  const double cy = 30.0 + kPanel / 2.0;
  auto px = [&](const BlochVector& b) { return cx + kRadius * (use_v ? b.v : b.u); };
  auto py = [&](const BlochVector& b) { return cy - kRadius * b.w; };

  svg += fmt::format(
      "<circle cx=\"{:.3f}\" cy=\"{:.3f}\" r=\"{:.3f}\" fill=\"none\" stroke=\"#888\"/>\n", cx, cy,
      kRadius);
  svg += fmt::format("<line x1=\"{:.3f}\" y1=\"{:.3f}\" x2=\"{:.3f}\" y2=\"{:.3f}\" stroke=\"#ccc\"/>\n",
                     cx - kRadius, cy, cx + kRadius, cy);
  svg += fmt::format("<circle cx=\"{:.3f}\" cy=\"{:.3f}\" r=\"4\" fill=\"#1f77b4\"/>\n", cx, cy - kRadius);
  svg += fmt::format("<circle cx=\"{:.3f}\" cy=\"{:.3f}\" r=\"4\" fill=\"#d62728\"/>\n", cx, cy + kRadius);
  svg += fmt::format("<text x=\"{:.3f}\" y=\"{:.3f}\" font-size=\"12\">N (mode 1)</text>\n", cx + 8,
                     cy - kRadius - 4);
  svg += fmt::format("<text x=\"{:.3f}\" y=\"{:.3f}\" font-size=\"12\">S (mode 2)</text>\n", cx + 8,
                     cy + kRadius + 14);
  svg += fmt::format("<text x=\"{:.3f}\" y=\"{:.3f}\" font-size=\"12\">{}-w</text>\n", cx - 12,
                     cy + kRadius + 34, horizontal);

  if (!path.empty()) {
    svg += "<polyline fill=\"none\" stroke=\"#2ca02c\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < path.size(); ++i) {
      if (i) svg += ' ';
      svg += fmt::format("{:.3f},{:.3f}", px(path[i]), py(path[i]));
    }
    svg += "\"/>\n";
  }
  for (const auto& m : markers)
    svg += fmt::format("<circle cx=\"{:.3f}\" cy=\"{:.3f}\" r=\"3\" fill=\"#ff7f0e\"/>\n", px(m), py(m));
}

}  // namespace

std::string trajectory_csv(const CouplerParams& params, const std::vector<TrajectorySample>& samples) {
  std::string out = "time,omega_t_over_pi,re_a1,im_a1,re_a2,im_a2,u,v,w,p2\n";
  for (const auto& s : samples) {
    const auto b = to_bloch(s.state);
    row(out, {s.time, omega_t_over_pi(params, s.time), s.state.a1.real(), s.state.a1.imag(),
              s.state.a2.real(), s.state.a2.imag(), b.u, b.v, b.w, s.state.transferred()});
  }
  return out;
}

std::string feasibility_csv(const FeasibilityMap& map) {
  std::string out = "ratio,phi,feasible\n";
  for (int i = 0; i < map.n; ++i)
    for (int j = 0; j < map.n; ++j)
      out += fmt::format("{},{},{}\n", format_double(map.ratios[i]), format_double(map.phases[j]),
                         map.at(i, j) ? 1 : 0);
  return out;
}

std::string boundary_csv(int n) {
  std::string out = "ratio,phi_c\n";
  for (int i = 0; i < n; ++i) {
    const double r = static_cast<double>(i) / (n - 1);
    row(out, {r, feasibility_boundary(r)});
  }
  return out;
}

std::string transfer_map_csv(const TransferMap& map) {
  std::string out = "omega_t1_over_pi,omega_t2_over_pi,p2\n";
  for (int i = 0; i < map.n; ++i)
    for (int j = 0; j < map.n; ++j) row(out, {map.t1_axis[i], map.t2_axis[j], map.at(i, j)});
  return out;
}

std::string contrast_csv(const ContrastSweep& sweep) {
  std::string out = "dtheta,offset,forward,backward,contrast_db\n";
  for (int i = 0; i < sweep.n; ++i)
    for (int j = 0; j < sweep.n; ++j) {
      const auto k = sweep.index(i, j);
      row(out, {sweep.axis[i], sweep.axis[j], sweep.forward[k], sweep.backward[k], sweep.contrast[k]});
    }
  return out;
}

std::string bloch_svg(const std::vector<BlochVector>& path, const std::vector<BlochVector>& markers,
                      const std::string& title) {
  std::string svg = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\" "
      "viewBox=\"0 0 {:.0f} {:.0f}\">\n",
      2 * kPanel, kPanel + 50, 2 * kPanel, kPanel + 50);
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += fmt::format("<text x=\"10\" y=\"18\" font-size=\"14\">{}</text>\n", title);
  panel(svg, 0.0, "u", path, markers, false);
  panel(svg, kPanel, "v", path, markers, true);
  svg += "</svg>\n";
  return svg;
}

json protocol_json(const CouplerParams& params, const Protocol& protocol) {
  json segs = json::array();
  for (const auto& s : protocol.segments())
    segs.push_back({{"phase", s.phase()},
                    {"duration", s.duration()},
                    {"omega_t_over_pi", omega_t_over_pi(params, s.duration())}});
  return segs;
}

Protocol protocol_from_json(const json& segments) {
  if (!segments.is_array() || segments.empty()) throw IoError("plan has no segments");
  std::vector<CouplingSegment> segs;
  for (const auto& s : segments) {
    if (!s.is_object() || !s.contains("phase") || !s.contains("duration") ||
        !s["phase"].is_number() || !s["duration"].is_number())
      throw IoError("plan segment needs numeric 'phase' and 'duration'");
    segs.emplace_back(s["phase"].get<double>(), s["duration"].get<double>());
  }
  return Protocol(std::move(segs));
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << content;
  if (!out) throw IoError("write failed for " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace pcmod::cli
