#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <set>
#include <sstream>

namespace pentagram {

namespace {

const std::vector<std::string> kLayers = {"A", "B", "C", "K", "L", "D",
                                          "E", "O", "J", "X", "circles", "klines"};

struct Style {
  const char* point_fill;
  const char* stroke;
};

Style layer_style(const std::string& name) {
  if (name == "A") return {"#1f3a93", "#1f3a93"};
  if (name == "B") return {"#c0392b", "#c0392b"};
  if (name == "C") return {"#1e8449", "#1e8449"};
  if (name == "K") return {"#8e44ad", "#8e44ad"};
  if (name == "L") return {"#b9770e", "#b9770e"};
  if (name == "D") return {"#148f77", "#148f77"};
  if (name == "E") return {"#cb4335", "#cb4335"};
  if (name == "O") return {"#17202a", "#17202a"};
  if (name == "J") return {"#4a235a", "#4a235a"};
  if (name == "X") return {"#7b241c", "#7b241c"};
  return {"#555555", "#555555"};
}

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  // avoid the two spellings of zero
  if (std::string(buf) == "-0.0000") return "0.0000";
  return buf;
}

struct Box {
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  bool empty = true;

  void add(const Point<double>& p) {
    if (empty) {
      xmin = xmax = p.x;
      ymin = ymax = p.y;
      empty = false;
      return;
    }
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  void add(const Circle<double>& c) {
    double r = std::sqrt(c.r2);
    add(Point<double>{c.center.x - r, c.center.y - r});
    add(Point<double>{c.center.x + r, c.center.y + r});
  }
};

struct Derived {
  PentagramConfig<double> cfg;
  bool cfg_ok = false;
  Penta<double> D{}, E{};
  bool de_ok = false;
  std::optional<Point<double>> O, J, X;
  std::optional<Circle<double>> c_circle;
};

}  // namespace

std::vector<std::string> parse_show_list(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (std::find(kLayers.begin(), kLayers.end(), item) == kLayers.end()) {
      throw std::invalid_argument("unknown layer '" + item + "'");
    }
    if (std::find(out.begin(), out.end(), item) == out.end()) out.push_back(item);
  }
  return out;
}

RenderResult render_svg(const ConfigDocument& doc, const std::vector<std::string>& show_in) {
  RenderResult result;
  std::vector<std::string> show = show_in;
  if (show.empty()) show = {"A"};
  auto wants = [&](const std::string& s) {
    return std::find(show.begin(), show.end(), s) != show.end();
  };

  Penta<double> A = doc.double_points();

  Derived d;
  bool needs_cfg = wants("B") || wants("C") || wants("K") || wants("L") || wants("D") ||
                   wants("E") || wants("O") || wants("J") || wants("X") || wants("circles") ||
                   wants("klines");
  if (needs_cfg) {
    try {
      d.cfg = build_pentagram(A);
      d.cfg_ok = true;
    } catch (const GeomError&) {
      d.cfg_ok = false;
    }
  }
  // cached layers take precedence over recomputation
  auto take_cached = [&](const char* name, Penta<double>& dst) {
    if (auto cached = doc.double_derived(name)) {
      dst = *cached;
      return true;
    }
    return false;
  };
  if (d.cfg_ok) {
    take_cached("B", d.cfg.B);
    take_cached("C", d.cfg.C);
    take_cached("K", d.cfg.K);
    take_cached("L", d.cfg.L);
  }
  if (wants("D") || wants("E")) {
    if (d.cfg_ok) {
      try {
        KStarPoints<double> ks = k_star_points(d.cfg.K);
        d.D = ks.D;
        d.E = ks.E;
        d.de_ok = true;
      } catch (const GeomError&) {
        d.de_ok = false;
      }
    }
    if (!d.de_ok) {
      auto cd = doc.double_derived("D");
      auto ce = doc.double_derived("E");
      if (cd && ce) {
        d.D = *cd;
        d.E = *ce;
        d.de_ok = true;
      }
    }
  }
  if (d.cfg_ok && (wants("C") || wants("circles") || wants("J") || wants("O") || wants("X"))) {
    try {
      d.c_circle = circumcircle(d.cfg.C[0], d.cfg.C[1], d.cfg.C[2]);
    } catch (const GeomError&) {
    }
  }
  if (wants("O") || wants("J") || wants("X")) {
    // O anchored on the star-point circle; J on the
    // C circle; X from the K_i L_i concurrency witness
    if (d.cfg_ok) {
      try {
        d.O = circumcircle(d.cfg.B[0], d.cfg.B[1], d.cfg.B[2]).center;
      } catch (const GeomError&) {
      }
      if (d.c_circle) d.J = d.c_circle->center;
      try {
        std::array<Line<double>, 5> lines = kl_lines(d.cfg);
        d.X = intersect_lines(lines[0], lines[1]);
      } catch (const GeomError&) {
      }
    }
  }

  // viewport over everything drawn, with a 5% margin
  Box box;
  for (const auto& p : A) box.add(p);
  auto add_penta = [&](const Penta<double>& pts) {
    for (const auto& p : pts) box.add(p);
  };
  if (d.cfg_ok) {
    if (wants("B")) add_penta(d.cfg.B);
    if (wants("C")) add_penta(d.cfg.C);
    if (wants("K")) add_penta(d.cfg.K);
    if (wants("L")) add_penta(d.cfg.L);
    if (wants("circles")) {
      for (const auto& c : d.cfg.miquel_circles) box.add(c);
      if (d.c_circle) box.add(*d.c_circle);
    }
  }
  if (d.de_ok) {
    if (wants("D")) add_penta(d.D);
    if (wants("E")) add_penta(d.E);
  }
  if (wants("O") && d.O) box.add(*d.O);
  if (wants("J") && d.J) box.add(*d.J);
  if (wants("X") && d.X) box.add(*d.X);

  double w = box.xmax - box.xmin, h = box.ymax - box.ymin;
  if (w <= 0) w = 1;
  if (h <= 0) h = 1;
  box.xmin -= 0.05 * w;
  box.xmax += 0.05 * w;
  box.ymin -= 0.05 * h;
  box.ymax += 0.05 * h;
  w = box.xmax - box.xmin;
  h = box.ymax - box.ymin;

  const double width = 1000.0;
  const double height = width * h / w;
  double scale = width / w;
  // y axis flipped into mathematical orientation
  auto map = [&](const Point<double>& p) {
    return Point<double>{(p.x - box.xmin) * scale, (box.ymax - p.y) * scale};
  };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt(width)
      << "\" height=\"" << fmt(height) << "\" viewBox=\"0 0 " << fmt(width) << " " << fmt(height)
      << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  auto draw_circle = [&](const Circle<double>& c, const char* stroke) {
    Point<double> m = map(c.center);
    svg << "<circle cx=\"" << fmt(m.x) << "\" cy=\"" << fmt(m.y) << "\" r=\""
        << fmt(std::sqrt(c.r2) * scale) << "\" fill=\"none\" stroke=\"" << stroke
        << "\" stroke-width=\"1.2\"/>\n";
  };

  // clip an infinite line against the viewport rectangle
  auto draw_line = [&](const Line<double>& l, const char* stroke) {
    std::vector<Point<double>> hits;
    auto consider = [&](double x, double y) {
      const double pad = 1e-9 * (std::fabs(box.xmax) + std::fabs(box.ymax) + 1);
      if (x >= box.xmin - pad && x <= box.xmax + pad && y >= box.ymin - pad && y <= box.ymax + pad) {
        for (const auto& q : hits) {
          if (std::fabs(q.x - x) + std::fabs(q.y - y) < 1e-12) return;
        }
        hits.push_back({x, y});
      }
    };
    if (std::fabs(l.b) > 1e-300) {
      consider(box.xmin, (-l.c - l.a * box.xmin) / l.b);
      consider(box.xmax, (-l.c - l.a * box.xmax) / l.b);
    }
    if (std::fabs(l.a) > 1e-300) {
      consider((-l.c - l.b * box.ymin) / l.a, box.ymin);
      consider((-l.c - l.b * box.ymax) / l.a, box.ymax);
    }
    if (hits.size() < 2) return;
    Point<double> p1 = map(hits[0]), p2 = map(hits[1]);
    svg << "<line x1=\"" << fmt(p1.x) << "\" y1=\"" << fmt(p1.y) << "\" x2=\"" << fmt(p2.x)
        << "\" y2=\"" << fmt(p2.y) << "\" stroke=\"" << stroke << "\" stroke-width=\"1.0\"/>\n";
  };

  auto draw_point = [&](const Point<double>& p, const std::string& label, const Style& st) {
    Point<double> m = map(p);
    svg << "<circle cx=\"" << fmt(m.x) << "\" cy=\"" << fmt(m.y) << "\" r=\"3.5\" fill=\""
        << st.point_fill << "\"/>\n";
    svg << "<text x=\"" << fmt(m.x + 6) << "\" y=\"" << fmt(m.y - 6)
        << "\" font-family=\"sans-serif\" font-size=\"16\" fill=\"" << st.point_fill << "\">"
        << label << "</text>\n";
  };

  auto draw_orbit = [&](const std::string& name, const Penta<double>& pts) {
    Style st = layer_style(name);
    for (int i = 0; i < 5; ++i) draw_point(pts[i], name + std::to_string(i + 1), st);
  };

  // circles and lines first, points and labels on top
  if (wants("circles")) {
    if (d.cfg_ok) {
      for (const auto& c : d.cfg.miquel_circles) draw_circle(c, "#9bb7d4");
      if (d.c_circle) draw_circle(*d.c_circle, "#7dcb9a");
    } else {
      result.partial = true;
      result.skipped.push_back("circles");
    }
  }
  if (wants("klines")) {
    if (d.cfg_ok) {
      bool drawn = false;
      try {
        std::array<Line<double>, 5> lines = kl_lines(d.cfg);
        for (const auto& l : lines) draw_line(l, "#c79fd7");
        drawn = true;
      } catch (const GeomError&) {
      }
      if (!drawn) {
        result.partial = true;
        result.skipped.push_back("klines");
      }
    } else {
      result.partial = true;
      result.skipped.push_back("klines");
    }
  }

  for (std::string name : {"B", "C", "K", "L"}) {
    if (!wants(name)) continue;
    if (d.cfg_ok) {
      draw_orbit(name, name == "B"   ? d.cfg.B
                       : name == "C" ? d.cfg.C
                       : name == "K" ? d.cfg.K
                                     : d.cfg.L);
    } else {
      result.partial = true;
      result.skipped.push_back(name);
    }
  }
  for (std::string name : {"D", "E"}) {
    if (!wants(name)) continue;
    if (d.de_ok) {
      draw_orbit(name, name == "D" ? d.D : d.E);
    } else {
      result.partial = true;
      result.skipped.push_back(name);
    }
  }
  if (wants("A")) draw_orbit("A", A);
  auto draw_single = [&](const char* name, const std::optional<Point<double>>& p) {
    if (!wants(name)) return;
    if (p) {
      draw_point(*p, name, layer_style(name));
    } else {
      result.partial = true;
      result.skipped.push_back(name);
    }
  };
  draw_single("O", d.O);
  draw_single("J", d.J);
  draw_single("X", d.X);

  svg << "</svg>\n";
  result.svg = svg.str();
  return result;
}

}  // namespace pentagram
