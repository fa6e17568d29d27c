#include "ringmod/plotdata.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ringmod/bounds.h"
#include "ringmod/special_functions.h"

namespace ringmod {

namespace {

std::vector<double> log_spaced(double lo, double hi, int count) {
  if (count < 0) throw std::invalid_argument("sample count must be >= 0");
  if (count > 0 && !(lo > 0.0 && hi >= lo)) throw std::invalid_argument("need 0 < lo <= hi");
  std::vector<double> out;
  for (int i = 0; i < count; ++i) {
    const double f = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
    out.push_back(i == count - 1 && count > 1 ? hi
                                              : std::exp(std::log(lo) + f * std::log(hi / lo)));
  }
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::ofstream open_or_throw(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

void close_or_throw(std::ofstream& out, const std::string& path) {
  out.close();
  if (!out) throw std::runtime_error("error writing " + path);
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '&':
        out += "&amp;";
        break;
      default:
        out += ch;
    }
  }
  return out;
}

}  // namespace

Sweep sweep_teichmuller_excess(double t_lo, double t_hi, int count) {
  Sweep s;
  s.title = "g(t) = mo R_T(t) - log t";
  s.columns = {"t", "g"};
  for (double t : log_spaced(t_lo, t_hi, count)) s.rows.push_back({t, teichmuller_excess2(t)});
  return s;
}

Sweep sweep_continuity(int n, double gamma, double big_m, double r0, double dist, double d_lo,
                       double d_hi, int count) {
  Sweep s;
  s.title = n == 2 ? "bound on |f(x1) - f(x0)|" : "bound on log|f(x1) - f(x0)|";
  s.columns = {"d", "bound"};
  for (double d : log_spaced(d_lo, d_hi, count))
    s.rows.push_back({d, continuity_bounds(n, gamma, big_m, r0, dist, d).value});
  return s;
}

void write_csv(const Sweep& sweep, const std::string& path) {
  std::ofstream out = open_or_throw(path);
  for (std::size_t i = 0; i < sweep.columns.size(); ++i)
    out << (i ? "," : "") << csv_field(sweep.columns[i]);
  out << "\n";
  for (const auto& row : sweep.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << fmt(row[i]);
    out << "\n";
  }
  close_or_throw(out, path);
}

void write_svg(const Sweep& sweep, const std::string& path) {
  const double w = 640, h = 400, ml = 70, mr = 20, mt = 30, mb = 50;
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  const bool have = sweep.rows.size() >= 2 && sweep.columns.size() >= 2;
  // log scale in x when the samples span more than two decades
  bool logx = false;
  if (have) {
    x0 = x1 = sweep.rows.front()[0];
    y0 = y1 = sweep.rows.front()[1];
    for (const auto& r : sweep.rows) {
      x0 = std::min(x0, r[0]);
      x1 = std::max(x1, r[0]);
      y0 = std::min(y0, r[1]);
      y1 = std::max(y1, r[1]);
    }
    logx = x0 > 0 && x1 / x0 > 100;
    if (logx) {
      x0 = std::log10(x0);
      x1 = std::log10(x1);
    }
    if (x1 == x0) x1 = x0 + 1;
    if (y1 == y0) {
      y0 -= 0.5;
      y1 += 0.5;
    }
  }
  auto px = [&](double x) { return ml + (x - x0) / (x1 - x0) * (w - ml - mr); };
  auto py = [&](double y) { return h - mb - (y - y0) / (y1 - y0) * (h - mt - mb); };
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
    << "\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<line x1=\"" << ml << "\" y1=\"" << h - mb << "\" x2=\"" << w - mr << "\" y2=\"" << h - mb
    << "\" stroke=\"black\"/>\n";
  o << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << h - mb
    << "\" stroke=\"black\"/>\n";
  o << "<text x=\"" << w / 2 << "\" y=\"" << mt - 10 << "\" text-anchor=\"middle\">"
    << xml_escape(sweep.title) << "</text>\n";
  const std::string xl = sweep.columns.size() > 0 ? sweep.columns[0] : "x";
  const std::string yl = sweep.columns.size() > 1 ? sweep.columns[1] : "y";
  o << "<text x=\"" << w / 2 << "\" y=\"" << h - 10 << "\" text-anchor=\"middle\">"
    << xml_escape(logx ? "log10 " + xl : xl) << "</text>\n";
  o << "<text x=\"15\" y=\"" << h / 2 << "\" transform=\"rotate(-90 15 " << h / 2
    << ")\" text-anchor=\"middle\">" << xml_escape(yl) << "</text>\n";
  if (have) {
    char buf[64];
    for (double v : {x0, x1}) {
      std::snprintf(buf, sizeof buf, "%.4g", v);
      o << "<text x=\"" << px(v) << "\" y=\"" << h - mb + 18 << "\" text-anchor=\"middle\">" << buf
        << "</text>\n";
    }
    for (double v : {y0, y1}) {
      std::snprintf(buf, sizeof buf, "%.4g", v);
      o << "<text x=\"" << ml - 5 << "\" y=\"" << py(v) + 4 << "\" text-anchor=\"end\">" << buf
        << "</text>\n";
    }
    o << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
    for (const auto& r : sweep.rows) {
      const double x = logx ? std::log10(r[0]) : r[0];
      std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(x), py(r[1]));
      o << buf;
    }
    o << "\"/>\n";
  }
  o << "</svg>\n";
  std::ofstream out = open_or_throw(path);
  out << o.str();
  close_or_throw(out, path);
}

void write_report_csv(const AggregateReport& report, const std::string& path) {
  std::ofstream out = open_or_throw(path);
  out << "scenario,check,expected,actual,tolerance,provenance,verdict\n";
  for (const auto& r : report.reports)
    for (const auto& c : r.checks)
      out << csv_field(r.scenario) << "," << csv_field(c.name) << "," << fmt(c.expected) << ","
          << fmt(c.actual) << "," << fmt(c.tolerance) << "," << to_string(c.provenance) << ","
          << to_string(c.verdict) << "\n";
  close_or_throw(out, path);
}

}  // namespace ringmod
