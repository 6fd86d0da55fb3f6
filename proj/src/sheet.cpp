#include "bralpha/sheet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "parallel.hpp"

namespace bralpha {

std::string_view to_string(Topology t) {
  switch (t) {
    case Topology::open:
      return "open";
    case Topology::periodic:
      return "periodic";
    case Topology::closed:
      return "closed";
  }
  return "unknown";
}

Topology parse_topology(std::string_view name) {
  if (name == "open") return Topology::open;
  if (name == "periodic") return Topology::periodic;
  if (name == "closed") return Topology::closed;
  throw std::invalid_argument("unknown topology '" + std::string(name) +
                              "' (expected open, periodic or closed)");
}

VortexSheet::VortexSheet(std::vector<PlanarVector> nodes, double gamma_start, double gamma_end,
                         Topology topology, double period)
    : nodes_(std::move(nodes)),
      gamma_start_(gamma_start),
      gamma_end_(gamma_end),
      topology_(topology),
      period_(topology == Topology::periodic ? period : 0.0) {
  const std::size_t min_nodes = topology == Topology::open ? 2 : 4;
  if (nodes_.size() < min_nodes) {
    throw std::invalid_argument("sheet: need at least " + std::to_string(min_nodes) +
                                " nodes for topology " + std::string(to_string(topology)) +
                                ", got " + std::to_string(nodes_.size()));
  }
  if (!(std::isfinite(gamma_start) && std::isfinite(gamma_end) && gamma_end > gamma_start)) {
    throw std::invalid_argument("sheet: gamma_end must exceed gamma_start");
  }
  if (topology == Topology::periodic && !(period > 0.0 && std::isfinite(period))) {
    throw std::invalid_argument("sheet: periodic topology needs a positive period");
  }
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!is_finite(nodes_[i])) {
      throw std::invalid_argument("sheet: node " + std::to_string(i) + " is not finite");
    }
  }
}

double VortexSheet::spacing() const {
  const double n = static_cast<double>(nodes_.size());
  return total_circulation() / (wraps() ? n : n - 1.0);
}

double VortexSheet::gamma_at(std::size_t i) const {
  return gamma_start_ + static_cast<double>(i) * spacing();
}

PlanarVector VortexSheet::wrap_shift() const {
  return topology_ == Topology::periodic ? PlanarVector{period_, 0.0} : PlanarVector{0.0, 0.0};
}

PlanarVector VortexSheet::node(long i) const {
  const long n = static_cast<long>(nodes_.size());
  if (!wraps()) {
    if (i < 0 || i >= n) {
      throw std::out_of_range("sheet: node index out of range on an open sheet");
    }
    return nodes_[static_cast<std::size_t>(i)];
  }
  long q = i / n;
  long r = i % n;
  if (r < 0) {
    r += n;
    --q;
  }
  return nodes_[static_cast<std::size_t>(r)] + static_cast<double>(q) * wrap_shift();
}

std::vector<double> VortexSheet::weights() const {
  std::vector<double> w(nodes_.size(), spacing());
  if (!wraps()) {
    w.front() *= 0.5;
    w.back() *= 0.5;
  }
  return w;
}

VortexSheet VortexSheet::with_nodes(std::vector<PlanarVector> nodes) const {
  if (nodes.size() != nodes_.size()) {
    throw std::invalid_argument("sheet: with_nodes changes the node count");
  }
  return VortexSheet(std::move(nodes), gamma_start_, gamma_end_, topology_, period_);
}

VelocityField sheet_velocity(const VortexSheet& sheet, const KernelParams& params,
                             const VelocityOptions& options) {
  if (params.kind == KernelKind::euler) {
    throw std::invalid_argument("singular kernel not integrable by this quadrature");
  }
  const bool periodic = sheet.topology() == Topology::periodic;
  if (periodic != params.period.has_value()) {
    throw std::invalid_argument(periodic ? "sheet is periodic but the kernel has no period"
                                         : "kernel is periodic but the sheet is not");
  }
  if (periodic && std::abs(*params.period - sheet.period()) > 1e-12 * sheet.period()) {
    throw std::invalid_argument("kernel period does not match the sheet period");
  }
  const KernelEvaluator kernel(params);

  const auto x = sheet.nodes();
  const auto w = sheet.weights();
  const std::size_t n = x.size();
  VelocityField u(n, PlanarVector{0.0, 0.0});

  const unsigned threads = detail::resolve_threads(options.threads);
  if (threads <= 1) {
    // Hot loop: each pair is evaluated once and scattered with both signs.
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const PlanarVector k = kernel(x[i] - x[j]);
        u[i] += w[j] * k;
        u[j] -= w[i] * k;
      }
    }
    return u;
  }

  detail::parallel_chunks(n, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      PlanarVector acc{0.0, 0.0};
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) {
          acc += w[j] * kernel(x[i] - x[j]);
        }
      }
      u[i] = acc;
    }
  });
  return u;
}

double chord_arc(const VortexSheet& sheet) {
  const auto x = sheet.nodes();
  const std::size_t n = x.size();
  const double h = sheet.spacing();
  const double total = sheet.total_circulation();
  const bool periodic = sheet.topology() == Topology::periodic;
  const double period = sheet.period();

  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double circ = static_cast<double>(j - i) * h;
      if (sheet.wraps()) {
        circ = std::min(circ, total - circ);
      }
      PlanarVector d = x[i] - x[j];
      if (periodic) {
        d.x1 -= period * std::round(d.x1 / period);
      }
      best = std::min(best, norm(d) / circ);
    }
  }
  return best;
}

namespace {

struct Spline {
  std::vector<double> y;
  std::vector<double> m;  // second derivatives
  double h;
};

Spline natural_spline(std::vector<double> y, double h) {
  const std::size_t n = y.size();
  std::vector<double> m(n, 0.0);
  if (n > 2) {
    // Thomas algorithm on (m_{i-1} + 4 m_i + m_{i+1}) = 6 (y_{i+1} - 2 y_i + y_{i-1}) / h^2.
    const std::size_t k = n - 2;
    std::vector<double> c(k, 0.0);
    std::vector<double> d(k, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
      const double rhs = 6.0 * (y[i + 2] - 2.0 * y[i + 1] + y[i]) / (h * h);
      const double diag = 4.0 - (i > 0 ? c[i - 1] : 0.0);
      c[i] = 1.0 / diag;
      d[i] = (rhs - (i > 0 ? d[i - 1] : 0.0)) / diag;
    }
    m[k] = d[k - 1];
    for (std::size_t i = k - 1; i >= 1; --i) {
      m[i] = d[i - 1] - c[i - 1] * m[i + 1];
    }
  }
  return {std::move(y), std::move(m), h};
}

double spline_eval(const Spline& s, double pos) {
  const std::size_t n = s.y.size();
  const double u = pos / s.h;
  std::size_t i = static_cast<std::size_t>(std::clamp(std::floor(u), 0.0, static_cast<double>(n - 2)));
  const double t = u - static_cast<double>(i);
  const double a = 1.0 - t;
  return a * s.y[i] + t * s.y[i + 1] +
         s.h * s.h / 6.0 * ((a * a * a - a) * s.m[i] + (t * t * t - t) * s.m[i + 1]);
}

}  // namespace

VortexSheet resample(const VortexSheet& sheet, std::size_t new_count) {
  if (new_count < 4) {
    throw std::invalid_argument("resample: need at least 4 nodes, got " + std::to_string(new_count));
  }
  const auto x = sheet.nodes();
  const std::size_t n = x.size();
  std::vector<PlanarVector> out(new_count);

  if (!sheet.wraps()) {
    const double h = 1.0 / static_cast<double>(n - 1);
    std::vector<double> y1(n);
    std::vector<double> y2(n);
    for (std::size_t i = 0; i < n; ++i) {
      y1[i] = x[i].x1;
      y2[i] = x[i].x2;
    }
    const Spline s1 = natural_spline(std::move(y1), h);
    const Spline s2 = natural_spline(std::move(y2), h);
    for (std::size_t m = 0; m < new_count; ++m) {
      const double pos = static_cast<double>(m) / static_cast<double>(new_count - 1);
      out[m] = {spline_eval(s1, pos), spline_eval(s2, pos)};
    }
    out.front() = x.front();
    out.back() = x.back();
    return VortexSheet(std::move(out), sheet.gamma_start(), sheet.gamma_end(), sheet.topology(),
                       sheet.period());
  }

  // Trigonometric interpolation of p(s) = x(s) - s * shift, s in [0, 1) the
  // fraction of the period in circulation.
  const PlanarVector shift = sheet.wrap_shift();
  const double dn = static_cast<double>(n);
  std::vector<PlanarVector> p(n);
  for (std::size_t i = 0; i < n; ++i) {
    p[i] = x[i] - (static_cast<double>(i) / dn) * shift;
  }
  const std::size_t kmax = n / 2;
  // Complex coefficients c_k = (1/n) sum_i p_i e^{-2 pi i k i / n}, per component.
  std::vector<PlanarVector> re(kmax + 1);
  std::vector<PlanarVector> im(kmax + 1);
  for (std::size_t k = 0; k <= kmax; ++k) {
    PlanarVector sr{0.0, 0.0};
    PlanarVector si{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
      const double phase = 2.0 * pi * static_cast<double>((k * i) % n) / dn;
      sr += std::cos(phase) * p[i];
      si -= std::sin(phase) * p[i];
    }
    re[k] = (1.0 / dn) * sr;
    im[k] = (1.0 / dn) * si;
  }
  const bool even = n % 2 == 0;
  for (std::size_t m = 0; m < new_count; ++m) {
    const double s = static_cast<double>(m) / static_cast<double>(new_count);
    PlanarVector v = re[0];
    for (std::size_t k = 1; k <= kmax; ++k) {
      const double phase = 2.0 * pi * static_cast<double>(k) * s;
      const double c = std::cos(phase);
      const double sn = std::sin(phase);
      if (even && k == kmax) {
        // Nyquist mode split evenly between +k and -k: real cosine only.
        v += c * re[k];
      } else {
        v += 2.0 * (c * re[k] - sn * im[k]);
      }
    }
    out[m] = v + s * shift;
  }
  return VortexSheet(std::move(out), sheet.gamma_start(), sheet.gamma_end(), sheet.topology(),
                     sheet.period());
}

namespace {

enum class Order { first, second };

std::vector<PlanarVector> differentiate(const VortexSheet& sheet, Order order) {
  const std::size_t n = sheet.size();
  const double h = sheet.spacing();
  std::vector<PlanarVector> out(n);
  const double inv = order == Order::first ? 1.0 / h : 1.0 / (h * h);

  auto central4 = [&](PlanarVector m2, PlanarVector m1, PlanarVector c, PlanarVector p1,
                      PlanarVector p2) {
    if (order == Order::first) {
      return (inv / 12.0) * (-1.0 * p2 + 8.0 * p1 - 8.0 * m1 + m2);
    }
    return (inv / 12.0) * (-1.0 * p2 + 16.0 * p1 - 30.0 * c + 16.0 * m1 - 1.0 * m2);
  };

  if (sheet.wraps()) {
    for (std::size_t i = 0; i < n; ++i) {
      const long li = static_cast<long>(i);
      out[i] = central4(sheet.node(li - 2), sheet.node(li - 1), sheet.node(li), sheet.node(li + 1),
                        sheet.node(li + 2));
    }
    return out;
  }

  const auto x = sheet.nodes();
  if (n == 2) {
    const PlanarVector d = order == Order::first ? inv * (x[1] - x[0]) : PlanarVector{0.0, 0.0};
    out[0] = d;
    out[1] = d;
    return out;
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (i >= 2 && i + 2 < n) {
      out[i] = central4(x[i - 2], x[i - 1], x[i], x[i + 1], x[i + 2]);
    } else if (order == Order::first) {
      out[i] = (0.5 * inv) * (x[i + 1] - x[i - 1]);
    } else {
      out[i] = inv * (x[i + 1] - 2.0 * x[i] + x[i - 1]);
    }
  }
  if (order == Order::first) {
    out[0] = (0.5 * inv) * (-3.0 * x[0] + 4.0 * x[1] - x[2]);
    out[n - 1] = (0.5 * inv) * (3.0 * x[n - 1] - 4.0 * x[n - 2] + x[n - 3]);
  } else if (n >= 4) {
    out[0] = inv * (2.0 * x[0] - 5.0 * x[1] + 4.0 * x[2] - x[3]);
    out[n - 1] = inv * (2.0 * x[n - 1] - 5.0 * x[n - 2] + 4.0 * x[n - 3] - x[n - 4]);
  } else {
    out[0] = out[1];
    out[n - 1] = out[1];
  }
  return out;
}

}  // namespace

std::vector<PlanarVector> tangent(const VortexSheet& sheet) {
  return differentiate(sheet, Order::first);
}

std::vector<PlanarVector> second_derivative(const VortexSheet& sheet) {
  return differentiate(sheet, Order::second);
}

std::vector<double> density(const VortexSheet& sheet) {
  const auto t = tangent(sheet);
  std::vector<double> g(t.size());
  std::transform(t.begin(), t.end(), g.begin(), [](PlanarVector v) { return 1.0 / norm(v); });
  return g;
}

PlanarVector centroid(const VortexSheet& sheet) {
  const auto w = sheet.weights();
  const auto x = sheet.nodes();
  PlanarVector acc{0.0, 0.0};
  double mass = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    acc += w[i] * x[i];
    mass += w[i];
  }
  return (1.0 / mass) * acc;
}

}  // namespace bralpha
