#ifndef RINGMOD_PLOTDATA_H_
#define RINGMOD_PLOTDATA_H_

#include <string>
#include <vector>

#include "ringmod/harness.h"

namespace ringmod {

// A table of samples; every row has one value per column.
struct Sweep {
  std::string title;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

// g(t) = mo R_T(t) - log t at `count` log-spaced t in [t_lo, t_hi].
// Columns t,g.
Sweep sweep_teichmuller_excess(double t_lo, double t_hi, int count);

// Modulus-of-continuity bound against d = |x1 - x0| at `count` log-spaced d
// in [d_lo, d_hi]. Columns d,bound.
Sweep sweep_continuity(int n, double gamma, double big_m, double r0, double dist, double d_lo,
                       double d_hi, int count);

// Throw std::runtime_error when the file cannot be written.
void write_csv(const Sweep& sweep, const std::string& path);
// One polyline of the second column against the first, with axes and
// labels. Sweeps with fewer than two rows give an empty frame.
void write_svg(const Sweep& sweep, const std::string& path);
// One row per check: scenario,check,expected,actual,tolerance,provenance,verdict.
void write_report_csv(const AggregateReport& report, const std::string& path);

}  // namespace ringmod

#endif  // RINGMOD_PLOTDATA_H_
