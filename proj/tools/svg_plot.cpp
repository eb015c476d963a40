#include "svg_plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>

namespace scaledcons::tools {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 400.0;
constexpr double kMargin = 50.0;
constexpr std::array<const char*, 8> kColors{"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                             "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

void write_scaled_state_svg(std::ostream& out, const Trajectory& traj, const std::string& title) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << escape(title)
      << "</text>\n";
  if (traj.samples() == 0) {
    out << "</svg>\n";
    return;
  }

  const double t0 = traj.times.front();
  const double t1 = std::max(traj.times.back(), t0 + 1e-12);
  double lo = traj.scaled_states.front().front();
  double hi = lo;
  for (const auto& g : traj.scaled_states)
    for (double v : g) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  if (hi - lo < 1e-12) {
    lo -= 1.0;
    hi += 1.0;
  }
  auto px = [&](double t) { return kMargin + (t - t0) / (t1 - t0) * (kWidth - 2 * kMargin); };
  auto py = [&](double v) { return kHeight - kMargin - (v - lo) / (hi - lo) * (kHeight - 2 * kMargin); };

  out << "<g stroke=\"black\" stroke-width=\"1\">\n";
  out << "<line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin << "\" x2=\"" << kWidth - kMargin
      << "\" y2=\"" << kHeight - kMargin << "\"/>\n";
  out << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin << "\" y2=\""
      << kHeight - kMargin << "\"/>\n</g>\n";
  out << "<g font-size=\"11\">\n";
  out << "<text x=\"" << kMargin << "\" y=\"" << kHeight - kMargin + 16 << "\">" << label(t0) << "</text>\n";
  out << "<text x=\"" << kWidth - kMargin << "\" y=\"" << kHeight - kMargin + 16 << "\" text-anchor=\"end\">"
      << label(t1) << " s</text>\n";
  out << "<text x=\"" << kMargin - 4 << "\" y=\"" << kMargin << "\" text-anchor=\"end\">" << label(hi)
      << "</text>\n";
  out << "<text x=\"" << kMargin - 4 << "\" y=\"" << kHeight - kMargin << "\" text-anchor=\"end\">" << label(lo)
      << "</text>\n</g>\n";

  const std::size_t agents = traj.scaled_states.front().size();
  // Thin out to at most ~2000 points per line.
  const std::size_t every = std::max<std::size_t>(1, traj.samples() / 2000);
  for (std::size_t i = 0; i < agents; ++i) {
    out << "<polyline fill=\"none\" stroke-width=\"1.5\" stroke=\"" << kColors[i % kColors.size()]
        << "\" points=\"";
    for (std::size_t k = 0; k < traj.samples(); k += every) {
      out << fmt(px(traj.times[k])) << ',' << fmt(py(traj.scaled_states[k][i])) << ' ';
    }
    out << "\"/>\n";
    out << "<text font-size=\"11\" fill=\"" << kColors[i % kColors.size()] << "\" x=\""
        << kWidth - kMargin + 4 << "\" y=\"" << kMargin + 14.0 * static_cast<double>(i) << "\">g" << i + 1
        << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace scaledcons::tools
