#include "spinscreen/screen_io.hpp"

#include <array>
#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "spinscreen/error.hpp"

#ifndef SPINSCREEN_VERSION_STRING
#define SPINSCREEN_VERSION_STRING "0.0.0"
#endif

namespace spinscreen {

namespace {

using nlohmann::ordered_json;

std::string num(double v) {
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
  if (ec != std::errc{}) throw Error(ErrorCode::InvalidArgument, "cannot format number");
  return std::string(buf.data(), end);
}

void csv_header(std::ostream& os, const ScreenParams& p) {
  os << "# two_a=" << p.a.twice() << "\n# two_b=" << p.b.twice() << "\n# two_c=" << p.c.twice()
     << "\n# two_d=" << p.d.twice() << "\n# kappa2=" << p.two_kappa.twice() / 2 << "\n# side=" << p.side() << "\n# two_x_range=" << p.x_min.twice()
     << ":" << p.x_max.twice() << "\n# two_y_range=" << p.y_min.twice() << ":" << p.y_max.twice()
     << "\n# version=" << SPINSCREEN_VERSION_STRING << "\n";
}

ordered_json json_header(const ScreenParams& p) {
  ordered_json j;
  j["two_a"] = p.a.twice();
  j["two_b"] = p.b.twice();
  j["two_c"] = p.c.twice();
  j["two_d"] = p.d.twice();
  j["kappa2"] = p.two_kappa.twice() / 2;
  j["side"] = p.side();
  j["two_x_range"] = {p.x_min.twice(), p.x_max.twice()};
  j["two_y_range"] = {p.y_min.twice(), p.y_max.twice()};
  j["version"] = SPINSCREEN_VERSION_STRING;
  return j;
}

void dump(std::ostream& os, const ordered_json& j) { os << j.dump() << "\n"; }

ordered_json pairs(const std::vector<double>& a, const std::vector<std::optional<double>>& b, bool a_first) {
  ordered_json arr = ordered_json::array();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!b[i]) continue;
    arr.push_back(a_first ? ordered_json::array({a[i], *b[i]}) : ordered_json::array({*b[i], a[i]}));
  }
  return arr;
}

double parse_double(std::string_view s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::InvalidArgument, "bad number '" + std::string(s) + "'");
  }
  return v;
}

int parse_int(std::string_view s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::InvalidArgument, "bad integer '" + std::string(s) + "'");
  }
  return v;
}

Method method_from(const std::string& name) {
  auto m = parse_method(name);
  if (!m) throw Error(ErrorCode::InvalidArgument, "unknown method '" + name + "'");
  return *m;
}

}  // namespace

std::string_view version() noexcept { return SPINSCREEN_VERSION_STRING; }

std::optional<Format> parse_format(std::string_view name) noexcept {
  if (name == "csv") return Format::Csv;
  if (name == "json") return Format::Json;
  return std::nullopt;
}

std::string_view extension(Format f) noexcept { return f == Format::Csv ? "csv" : "json"; }

void write_screen(std::ostream& os, const Screen& s, Format f) {
  const auto& p = s.params();
  const std::size_t n = s.side();
  if (f == Format::Csv) {
    csv_header(os, p);
    os << "# method=" << to_string(s.method()) << "\ntwo_x,two_y,u\n";
    for (std::size_t iy = 0; iy < n; ++iy)
      for (std::size_t ix = 0; ix < n; ++ix)
        os << p.x_at(ix).twice() << "," << p.y_at(iy).twice() << "," << num(s(ix, iy)) << "\n";
    return;
  }
  auto j = json_header(p);
  j["method"] = std::string(to_string(s.method()));
  ordered_json rows = ordered_json::array();
  for (std::size_t iy = 0; iy < n; ++iy) {
    const auto r = s.row(iy);
    rows.push_back(std::vector<double>(r.begin(), r.end()));
  }
  j["u"] = std::move(rows);
  dump(os, j);
}

Screen read_screen(std::istream& is, Format f) {
  if (f == Format::Json) {
    ordered_json j;
    try {
      j = ordered_json::parse(is);
      auto params = screen_ranges(j.at("two_a").get<int>(), j.at("two_b").get<int>(), j.at("two_c").get<int>(),
                                  j.at("two_d").get<int>());
      Screen s(params, method_from(j.at("method").get<std::string>()));
      const auto& rows = j.at("u");
      if (rows.size() != s.side()) throw Error(ErrorCode::InvalidArgument, "row count does not match the screen");
      for (std::size_t iy = 0; iy < s.side(); ++iy) {
        const auto& r = rows.at(iy);
        if (r.size() != s.side()) throw Error(ErrorCode::InvalidArgument, "row length does not match the screen");
        for (std::size_t ix = 0; ix < s.side(); ++ix) s(ix, iy) = r.at(ix).get<double>();
      }
      return s;
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::InvalidArgument, std::string("malformed screen JSON: ") + e.what());
    }
  }

  std::map<std::string, std::string> meta;
  std::string line;
  bool saw_columns = false;
  std::vector<std::array<double, 3>> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line.starts_with("# ")) {
      const auto eq = line.find('=');
      if (eq != std::string::npos) meta[line.substr(2, eq - 2)] = line.substr(eq + 1);
      continue;
    }
    if (!saw_columns) {
      if (line != "two_x,two_y,u") throw Error(ErrorCode::InvalidArgument, "unexpected CSV column line");
      saw_columns = true;
      continue;
    }
    const auto c1 = line.find(','), c2 = line.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) throw Error(ErrorCode::InvalidArgument, "bad CSV row");
    std::string_view sv(line);
    rows.push_back({static_cast<double>(parse_int(sv.substr(0, c1))),
                    static_cast<double>(parse_int(sv.substr(c1 + 1, c2 - c1 - 1))), parse_double(sv.substr(c2 + 1))});
  }
  for (const char* key : {"two_a", "two_b", "two_c", "two_d", "method"}) {
    if (!meta.count(key)) throw Error(ErrorCode::InvalidArgument, std::string("missing header key ") + key);
  }
  auto params = screen_ranges(parse_int(meta["two_a"]), parse_int(meta["two_b"]), parse_int(meta["two_c"]),
                              parse_int(meta["two_d"]));
  Screen s(params, method_from(meta["method"]));
  if (rows.size() != s.side() * s.side()) throw Error(ErrorCode::InvalidArgument, "CSV row count does not match");
  for (const auto& [x, y, u] : rows) {
    s.at(TwoJ(static_cast<int>(x)), TwoJ(static_cast<int>(y)));
    s(params.x_index(TwoJ(static_cast<int>(x))), params.y_index(TwoJ(static_cast<int>(y)))) = u;
  }
  return s;
}

void write_caustics(std::ostream& os, const ScreenParams& p, const CausticData& c) {
  auto j = json_header(p);
  j["coordinates"] = "shifted";
  j["y_caustic_minus"] = pairs(c.X, c.y_z_minus, true);
  j["y_caustic_plus"] = pairs(c.X, c.y_z_plus, true);
  j["x_caustic_minus"] = pairs(c.Y, c.x_z_minus, false);
  j["x_caustic_plus"] = pairs(c.Y, c.x_z_plus, false);
  dump(os, j);
}

void write_ridges(std::ostream& os, const ScreenParams& p, const CausticData& c) {
  auto j = json_header(p);
  j["coordinates"] = "shifted";
  j["y_ridge"] = pairs(c.X, c.y_vmax, true);
  j["x_ridge"] = pairs(c.Y, c.x_vmax, false);
  j["v_max"] = pairs(c.X, c.v_max, true);
  dump(os, j);
}

void write_potentials(std::ostream& os, const ScreenParams& p, Format f) {
  const auto ar = potentials(p, PBarMode::Arithmetic);
  const auto ge = potentials(p, PBarMode::Geometric);
  if (f == Format::Csv) {
    csv_header(os, p);
    os << "two_x,w_plus_arithmetic,w_minus_arithmetic,w_plus_geometric,w_minus_geometric\n";
    for (std::size_t i = 0; i < ar.x.size(); ++i)
      os << p.x_at(i).twice() << "," << num(ar.w_plus[i]) << "," << num(ar.w_minus[i]) << "," << num(ge.w_plus[i])
         << "," << num(ge.w_minus[i]) << "\n";
    return;
  }
  auto j = json_header(p);
  j["x"] = ar.x;
  j["arithmetic"] = {{"w_plus", ar.w_plus}, {"w_minus", ar.w_minus}};
  j["geometric"] = {{"w_plus", ge.w_plus}, {"w_minus", ge.w_minus}};
  dump(os, j);
}

void write_cos_theta3(std::ostream& os, const ScreenParams& p, Format f) {
  const std::size_t n = p.side();
  std::vector<std::optional<double>> grid(n * n);
  for (std::size_t iy = 0; iy < n; ++iy) {
    for (std::size_t ix = 0; ix < n; ++ix) {
      try {
        grid[iy * n + ix] = cos_theta3(Tetrahedron::from_point(p, p.x_at(ix), p.y_at(iy)), XPrime::Plain);
      } catch (const Error&) {
      }
    }
  }
  if (f == Format::Csv) {
    csv_header(os, p);
    os << "two_x,two_y,cos_theta3\n";
    for (std::size_t iy = 0; iy < n; ++iy)
      for (std::size_t ix = 0; ix < n; ++ix) {
        os << p.x_at(ix).twice() << "," << p.y_at(iy).twice() << ",";
        if (const auto& v = grid[iy * n + ix]) os << num(*v);
        os << "\n";
      }
    return;
  }
  auto j = json_header(p);
  ordered_json rows = ordered_json::array();
  for (std::size_t iy = 0; iy < n; ++iy) {
    ordered_json r = ordered_json::array();
    for (std::size_t ix = 0; ix < n; ++ix) {
      const auto& v = grid[iy * n + ix];
      r.push_back(v ? ordered_json(*v) : ordered_json(nullptr));
    }
    rows.push_back(std::move(r));
  }
  j["cos_theta3"] = std::move(rows);
  dump(os, j);
}

void write_pr_compare(std::ostream& os, const ScreenParams& p, const PRComparison& c, Format f) {
  if (f == Format::Csv) {
    csv_header(os, p);
    os << "# interior_count=" << c.interior_count << "\n# interior_max_rel=" << num(c.interior_max_rel)
       << "\n# interior_sign_agreement=" << num(c.interior_sign_agreement) << "\n# band_count=" << c.band_count
       << "\n# band_max_rel=" << num(c.band_max_rel) << "\n# forbidden=" << c.forbidden << "\n";
    os << "two_x,two_y,exact,estimate,rel_error,cos_theta3,region\n";
    for (const auto& pt : c.points) {
      os << pt.x.twice() << "," << pt.y.twice() << "," << num(pt.exact) << ",";
      if (!pt.estimate) {
        os << ",,,forbidden\n";
        continue;
      }
      os << num(pt.estimate->sixj) << ",";
      if (pt.rel_error) os << num(*pt.rel_error);
      os << "," << num(pt.estimate->cos_theta3) << ","
         << (pt.interior ? "interior" : pt.caustic_band ? "caustic" : "classical") << "\n";
    }
    return;
  }
  auto j = json_header(p);
  j["summary"] = {{"interior_count", c.interior_count},     {"interior_max_rel", c.interior_max_rel},
                  {"interior_sign_agreement", c.interior_sign_agreement}, {"band_count", c.band_count},
                  {"band_max_rel", c.band_max_rel},         {"forbidden", c.forbidden}};
  ordered_json pts = ordered_json::array();
  for (const auto& pt : c.points) {
    ordered_json e;
    e["two_x"] = pt.x.twice();
    e["two_y"] = pt.y.twice();
    e["exact"] = pt.exact;
    if (pt.estimate) {
      e["estimate"] = pt.estimate->sixj;
      e["rel_error"] = pt.rel_error ? ordered_json(*pt.rel_error) : ordered_json(nullptr);
      e["cos_theta3"] = pt.estimate->cos_theta3;
      e["region"] = pt.interior ? "interior" : pt.caustic_band ? "caustic" : "classical";
    } else {
      e["region"] = "forbidden";
    }
    pts.push_back(std::move(e));
  }
  j["points"] = std::move(pts);
  dump(os, j);
}

}  // namespace spinscreen
