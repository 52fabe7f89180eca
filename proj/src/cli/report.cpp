#include <cmath>
#include <sstream>

#include "circv/cli/run.hpp"
#include "circv/classv/frame.hpp"
#include "circv/curvature/connection.hpp"
#include "circv/curvature/riemann.hpp"

namespace circv::cli {

namespace {

void print_symmat(std::ostringstream& out, const char* name,
                  const tensor3::SymMat3& m) {
  out << name << " =\n";
  for (int i = 0; i < 3; ++i) {
    out << "  [";
    for (int j = 0; j < 3; ++j) {
      out << (j ? ", " : " ") << m(i, j);
    }
    out << " ]\n";
  }
}

void print_gamma(std::ostringstream& out, const char* name,
                 const tensor3::Rank3& gamma) {
  out << name << " (nonzero entries, ^s_{ki}):\n";
  bool any = false;
  for (int s = 0; s < 3; ++s)
    for (int k = 0; k < 3; ++k)
      for (int i = k; i < 3; ++i) {
        if (std::abs(gamma(s, k, i)) > 1e-14) {
          out << "  [" << s + 1 << "; " << k + 1 << "," << i + 1
              << "] = " << gamma(s, k, i) << "\n";
          any = true;
        }
      }
  if (!any) out << "  (all zero)\n";
}

}  // namespace

std::string report_text(const classv::Scenario& s, const Point& p,
                        std::optional<double> tau0) {
  const classv::MetricFrame fr = classv::metrics_at(s, p);
  std::ostringstream out;
  out.precision(12);

  out << "scenario: " << s.name << "\n";
  out << "point: (" << p[0] << ", " << p[1] << ", " << p[2] << ")\n";
  out << "A = " << fr.A.value() << ", B = " << fr.B.value() << "\n";
  print_symmat(out, "g", fr.g);
  print_symmat(out, "f", fr.f);
  if (fr.gbar) print_symmat(out, "gbar", *fr.gbar);

  namespace cv = circv::curvature;
  const cv::Connection conn = cv::christoffel(fr, cv::MetricTag::G);
  print_gamma(out, "Gamma(g)", conn.gamma);
  if (fr.gbar) {
    const cv::Connection bar = cv::christoffel(fr, cv::MetricTag::GBar);
    print_gamma(out, "Gamma(gbar)", bar.gamma);
  }

  const tensor3::Rank4 R = cv::riemann(conn);
  const cv::CurvatureReport rep = cv::ricci_and_scalars(R, fr);
  out << "max |R(g)| = " << R.max_abs() << "\n";
  print_symmat(out, "Ricci(g)", rep.ricci);
  out << "tau = " << rep.tau << ", tau* = " << rep.tau_star << "\n";

  if (fr.gbar) {
    const cv::Connection bar = cv::christoffel(fr, cv::MetricTag::GBar);
    out << "max |R(gbar)| = " << cv::riemann(bar).max_abs() << "\n";
  }

  if (tau0) {
    const cv::CorollaryResult res =
        cv::corollary_suite(fr, *tau0, Vec3::Unit(0));
    out << "sectional check with tau = " << *tau0 << ":\n";
    out << "  angle(e1, q e1) = " << res.angle
        << " rad (cos = " << std::cos(res.angle) << ")\n";
    out << "  mu(e1, q e1) direct   = " << res.mu_direct << "\n";
    out << "  mu(e1, q e1) formula  = " << res.mu_formula
        << "   [-(tau/6) tan^2(angle/2)]\n";
    out << "  det Ricci form        = " << res.ricci_det << "\n";
  }
  return out.str();
}

}  // namespace circv::cli
