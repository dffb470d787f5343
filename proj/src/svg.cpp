#include "topsel/svg.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "topsel/io.hpp"

namespace topsel {

namespace {

constexpr double kW = 480, kH = 480, kPad = 48;
const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double x) {
  // Plot coordinates need no more than 4 decimals.
  return format_double(std::round(x * 1e4) / 1e4);
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

void header(std::ostream& os, const std::string& title) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kW) << "\" height=\"" << num(kH)
     << "\" viewBox=\"0 0 " << num(kW) << ' ' << num(kH) << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << num(kW / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">" << escape(title)
     << "</text>\n";
}

struct Frame {
  double x0, x1, y0, y1;
  double px(double x) const { return kPad + (x - x0) / (x1 - x0) * (kW - 2 * kPad); }
  double py(double y) const { return kH - kPad - (y - y0) / (y1 - y0) * (kH - 2 * kPad); }
};

void axes(std::ostream& os, const Frame& f, const std::string& xl, const std::string& yl) {
  os << "<rect x=\"" << num(kPad) << "\" y=\"" << num(kPad) << "\" width=\"" << num(kW - 2 * kPad) << "\" height=\""
     << num(kH - 2 * kPad) << "\" fill=\"none\" stroke=\"#444\"/>\n";
  os << "<text x=\"" << num(kW / 2) << "\" y=\"" << num(kH - 12) << "\" text-anchor=\"middle\">" << escape(xl) << "</text>\n";
  os << "<text x=\"14\" y=\"" << num(kH / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 14 " << num(kH / 2)
     << ")\">" << escape(yl) << "</text>\n";
  os << "<text x=\"" << num(kPad) << "\" y=\"" << num(kH - kPad + 14) << "\">" << num(f.x0) << "</text>\n";
  os << "<text x=\"" << num(kW - kPad) << "\" y=\"" << num(kH - kPad + 14) << "\" text-anchor=\"end\">" << num(f.x1)
     << "</text>\n";
  os << "<text x=\"" << num(kPad - 4) << "\" y=\"" << num(kH - kPad) << "\" text-anchor=\"end\">" << num(f.y0) << "</text>\n";
  os << "<text x=\"" << num(kPad - 4) << "\" y=\"" << num(kPad + 10) << "\" text-anchor=\"end\">" << num(f.y1)
     << "</text>\n";
}

}  // namespace

void write_diagram_svg(std::ostream& os, const GradedDiagram& d, const std::string& title) {
  double lo = 0.0, hi = 1.0;
  bool any = false;
  for (const auto& p : d.points) {
    for (double v : {p.birth, p.death})
      if (std::isfinite(v)) {
        lo = any ? std::min(lo, v) : v;
        hi = any ? std::max(hi, v) : v;
        any = true;
      }
  }
  if (!(hi > lo)) hi = lo + 1.0;
  const double margin = 0.05 * (hi - lo);
  const Frame f{lo - margin, hi + margin, lo - margin, hi + margin};
  header(os, title);
  axes(os, f, "birth", "death");
  os << "<line x1=\"" << num(f.px(f.x0)) << "\" y1=\"" << num(f.py(f.y0)) << "\" x2=\"" << num(f.px(f.x1)) << "\" y2=\""
     << num(f.py(f.y1)) << "\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n";
  const auto degrees = d.degrees();
  for (const auto& p : d.points) {
    const auto di = static_cast<std::size_t>(std::find(degrees.begin(), degrees.end(), p.degree) - degrees.begin());
    const double y = std::isfinite(p.death) ? f.py(p.death) : kPad - 8;
    os << "<circle cx=\"" << num(f.px(p.birth)) << "\" cy=\"" << num(y) << "\" r=\"3\" fill=\"" << kPalette[di % 6]
       << "\" fill-opacity=\"0.8\"/>\n";
  }
  for (std::size_t i = 0; i < degrees.size(); ++i)
    os << "<text x=\"" << num(kW - kPad - 4) << "\" y=\"" << num(kH - kPad - 8 - 14.0 * static_cast<double>(i))
       << "\" text-anchor=\"end\" fill=\"" << kPalette[i % 6] << "\">H" << degrees[i] << "</text>\n";
  os << "</svg>\n";
}

void write_scores_svg(std::ostream& os, const Eigen::VectorXd& scores, const Eigen::VectorXd* sd,
                      const std::string& title) {
  const Eigen::Index p = scores.size();
  double top = 0.0;
  for (Eigen::Index j = 0; j < p; ++j) top = std::max(top, scores(j) + (sd ? (*sd)(j) : 0.0));
  if (!(top > 0.0)) top = 1.0;
  const Frame f{0.0, static_cast<double>(std::max<Eigen::Index>(p, 1)), 0.0, top * 1.05};
  header(os, title);
  axes(os, f, "variable", "score");
  const double bw = (f.px(1) - f.px(0)) * 0.7;
  for (Eigen::Index j = 0; j < p; ++j) {
    const double cx = f.px(static_cast<double>(j) + 0.5);
    const double y = f.py(std::max(scores(j), 0.0));
    os << "<rect x=\"" << num(cx - bw / 2) << "\" y=\"" << num(y) << "\" width=\"" << num(bw) << "\" height=\""
       << num(f.py(0) - y) << "\" fill=\"" << kPalette[0] << "\"/>\n";
    if (sd) {
      const double a = f.py(std::max(scores(j) - (*sd)(j), 0.0)), b = f.py(scores(j) + (*sd)(j));
      os << "<line x1=\"" << num(cx) << "\" y1=\"" << num(a) << "\" x2=\"" << num(cx) << "\" y2=\"" << num(b)
         << "\" stroke=\"black\"/>\n";
    }
    os << "<text x=\"" << num(cx) << "\" y=\"" << num(kH - kPad + 14) << "\" text-anchor=\"middle\">" << j + 1
       << "</text>\n";
  }
  os << "</svg>\n";
}

void write_path_svg(std::ostream& os, const std::vector<Eigen::VectorXd>& points, const std::string& title) {
  header(os, title);
  if (points.empty()) {
    os << "</svg>\n";
    return;
  }
  const Eigen::Index p = points.front().size();
  const auto n = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd X(n, p);
  for (Eigen::Index i = 0; i < n; ++i) X.row(i) = points[static_cast<std::size_t>(i)].transpose();
  const Eigen::RowVectorXd mean = X.colwise().mean();
  const Eigen::MatrixXd C = X.rowwise() - mean;
  Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(p, 2);
  if (p >= 2) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(C.transpose() * C);
    // Eigenvalues come in ascending order.
    basis.col(0) = es.eigenvectors().col(p - 1);
    basis.col(1) = es.eigenvectors().col(p - 2);
    for (int k = 0; k < 2; ++k) {
      Eigen::Index idx;
      basis.col(k).cwiseAbs().maxCoeff(&idx);
      if (basis(idx, k) < 0) basis.col(k) = -basis.col(k);
    }
  } else {
    basis(0, 0) = 1.0;
  }
  const Eigen::MatrixXd Y = C * basis;
  double x0 = Y.col(0).minCoeff(), x1 = Y.col(0).maxCoeff(), y0 = Y.col(1).minCoeff(), y1 = Y.col(1).maxCoeff();
  const double span = std::max({x1 - x0, y1 - y0, 1e-9}) * 0.55;
  const double cx = 0.5 * (x0 + x1), cy = 0.5 * (y0 + y1);
  const Frame f{cx - span, cx + span, cy - span, cy + span};
  axes(os, f, "PC 1", "PC 2");
  os << "<polyline fill=\"none\" stroke=\"" << kPalette[0] << "\" stroke-width=\"1.5\" points=\"";
  for (Eigen::Index i = 0; i < n; ++i) os << (i ? " " : "") << num(f.px(Y(i, 0))) << ',' << num(f.py(Y(i, 1)));
  os << "\"/>\n";
  os << "<circle cx=\"" << num(f.px(Y(0, 0))) << "\" cy=\"" << num(f.py(Y(0, 1))) << "\" r=\"4\" fill=\"" << kPalette[2]
     << "\"/>\n";
  os << "<circle cx=\"" << num(f.px(Y(n - 1, 0))) << "\" cy=\"" << num(f.py(Y(n - 1, 1))) << "\" r=\"4\" fill=\""
     << kPalette[1] << "\"/>\n";
  os << "</svg>\n";
}

}  // namespace topsel
