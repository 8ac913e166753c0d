#include "dmojc/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>

namespace dmojc::io {

void RunConfig::validate() const {
  if (dim < 1 || dim > 3)
    throw std::invalid_argument("config: dim must be 1, 2 or 3");
  if (branch != "finite" && branch != "infinite")
    throw std::invalid_argument("config: branch must be finite or infinite");
  if (t_steps < 2) throw std::invalid_argument("config: steps must be >= 2");
  if (!(t_max > 0.0) || !std::isfinite(t_max))
    throw std::invalid_argument("config: tmax must be positive and finite");
  if (nmax < 1) throw std::invalid_argument("config: nmax must be >= 1");
  if (max_n < 0) throw std::invalid_argument("config: max-n must be >= 0");
  for (double v : {eta, chi, mc2, gamma, alpha, j})
    if (!std::isfinite(v))
      throw std::invalid_argument("config: numeric fields must be finite");
  if (format != "csv" && format != "json" && format != "svg")
    throw std::invalid_argument("config: format must be csv, json or svg");
}

Dimensionality RunConfig::dimensionality() const {
  switch (dim) {
    case 1: return Dimensionality::D1;
    case 2: return Dimensionality::D2;
    case 3: return Dimensionality::D3;
  }
  throw std::invalid_argument("config: dim must be 1, 2 or 3");
}

BranchD3 RunConfig::branch_value() const {
  return branch == "infinite" ? BranchD3::InfiniteDeg : BranchD3::FiniteDeg;
}

ModelSpec RunConfig::simple_spec() const {
  validate();
  if (dim == 3) return ModelSpec::simple_d3(eta, mc2, j, branch_value());
  return ModelSpec::simple(dimensionality(), eta, mc2);
}

ModelSpec RunConfig::extended_spec() const {
  validate();
  if (dim == 3)
    return ModelSpec::two_isospin_d3(eta, chi, mc2, gamma, j, branch_value());
  return ModelSpec::two_isospin(dimensionality(), eta, chi, mc2, gamma);
}

json RunConfig::to_json() const {
  json j_out;
  j_out["dim"] = dim;
  j_out["branch"] = branch;
  j_out["j"] = j;
  j_out["eta"] = eta;
  j_out["chi"] = chi;
  j_out["mc2"] = mc2;
  j_out["gamma"] = gamma;
  j_out["alpha"] = alpha;
  j_out["tmax"] = t_max;
  j_out["steps"] = t_steps;
  j_out["nmax"] = nmax;
  j_out["max-n"] = max_n;
  j_out["format"] = format;
  j_out["output"] = output;
  return j_out;
}

void RunConfig::apply_json(const json& source) {
  if (!source.is_object())
    throw std::invalid_argument("config file must hold a JSON object");
  for (const auto& [key, value] : source.items()) {
    if (key == "dim") dim = value.get<int>();
    else if (key == "branch") branch = value.get<std::string>();
    else if (key == "j") j = value.get<double>();
    else if (key == "eta") eta = value.get<double>();
    else if (key == "chi") chi = value.get<double>();
    else if (key == "mc2") mc2 = value.get<double>();
    else if (key == "gamma") gamma = value.get<double>();
    else if (key == "alpha") alpha = value.get<double>();
    else if (key == "tmax") t_max = value.get<double>();
    else if (key == "steps") t_steps = value.get<int>();
    else if (key == "nmax") nmax = value.get<int>();
    else if (key == "max-n") max_n = value.get<int>();
    else if (key == "format") format = value.get<std::string>();
    else if (key == "output") output = value.get<std::string>();
    else
      throw std::invalid_argument("config file: unknown key '" + key + "'");
  }
}

std::string format_g17(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::string to_csv(const std::vector<std::string>& header,
                   const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out += ',';
    out += header[i];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += row[i];
    }
    out += '\n';
  }
  return out;
}

json make_envelope(json config, json rows, json checks) {
  json envelope;
  envelope["config"] = std::move(config);
  envelope["rows"] = std::move(rows);
  envelope["checks"] = std::move(checks);
  return envelope;
}

namespace {

struct Extent {
  double lo = 0.0;
  double hi = 1.0;

  void widen(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
};

std::string fmt2(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.2f", v);
  return buffer;
}

std::string fmt4(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.4g", v);
  return buffer;
}

} // namespace

std::string svg_line_plot(const std::string& title, const std::string& x_label,
                          const std::string& y_label,
                          const std::vector<Series>& series) {
  const double width = 720, height = 480;
  const double left = 70, right = 20, top = 40, bottom = 50;
  const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                           "#ff7f0e", "#8c564b"};

  Extent xs, ys;
  bool any = false;
  for (const Series& s : series)
    for (auto [x, y] : s.points) {
      if (!any) {
        xs = {x, x};
        ys = {y, y};
        any = true;
      } else {
        xs.widen(x);
        ys.widen(y);
      }
    }
  if (!any) {
    xs = {0, 1};
    ys = {0, 1};
  }
  if (xs.hi == xs.lo) xs.hi = xs.lo + 1;
  if (ys.hi == ys.lo) ys.hi = ys.lo + 1;

  auto px = [&](double x) {
    return left + (x - xs.lo) / (xs.hi - xs.lo) * (width - left - right);
  };
  auto py = [&](double y) {
    return height - bottom -
           (y - ys.lo) / (ys.hi - ys.lo) * (height - top - bottom);
  };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" "
         "height=\"480\" viewBox=\"0 0 720 480\">\n";
  out += "<rect width=\"720\" height=\"480\" fill=\"white\"/>\n";
  out += "<text x=\"360\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"16\">" + title + "</text>\n";
  // axes
  out += "<line x1=\"" + fmt2(left) + "\" y1=\"" + fmt2(height - bottom) +
         "\" x2=\"" + fmt2(width - right) + "\" y2=\"" +
         fmt2(height - bottom) + "\" stroke=\"black\"/>\n";
  out += "<line x1=\"" + fmt2(left) + "\" y1=\"" + fmt2(top) + "\" x2=\"" +
         fmt2(left) + "\" y2=\"" + fmt2(height - bottom) +
         "\" stroke=\"black\"/>\n";
  out += "<text x=\"" + fmt2((left + width - right) / 2) + "\" y=\"" +
         fmt2(height - 12) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\">" + x_label + "</text>\n";
  out += "<text x=\"18\" y=\"" + fmt2((top + height - bottom) / 2) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\" transform=\"rotate(-90 18 " +
         fmt2((top + height - bottom) / 2) + ")\">" + y_label + "</text>\n";
  // extremal tick labels
  out += "<text x=\"" + fmt2(left) + "\" y=\"" + fmt2(height - bottom + 16) +
         "\" font-family=\"sans-serif\" font-size=\"11\">" + fmt4(xs.lo) +
         "</text>\n";
  out += "<text x=\"" + fmt2(width - right) + "\" y=\"" +
         fmt2(height - bottom + 16) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" "
         "font-size=\"11\">" + fmt4(xs.hi) + "</text>\n";
  out += "<text x=\"" + fmt2(left - 6) + "\" y=\"" + fmt2(height - bottom) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" "
         "font-size=\"11\">" + fmt4(ys.lo) + "</text>\n";
  out += "<text x=\"" + fmt2(left - 6) + "\" y=\"" + fmt2(top + 4) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" "
         "font-size=\"11\">" + fmt4(ys.hi) + "</text>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const char* color = palette[i % 6];
    std::string points;
    for (auto [x, y] : series[i].points) {
      points += fmt2(px(x));
      points += ',';
      points += fmt2(py(y));
      points += ' ';
    }
    out += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
           "\" stroke-width=\"1.2\" points=\"" + points + "\"/>\n";
    out += "<text x=\"" + fmt2(width - right - 6) + "\" y=\"" +
           fmt2(top + 16.0 * (static_cast<double>(i) + 1.0)) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"12\" fill=\"" + color + "\">" + series[i].label +
           "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

void write_text(const std::string& path, const std::string& content) {
  if (path == "-" || path.empty()) {
    std::cout << content;
    std::cout.flush();
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file)
    throw std::runtime_error("cannot open output file: " + path);
  file << content;
}

} // namespace dmojc::io
