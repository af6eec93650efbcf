#include "abc/ratios.hpp"

#include "abc/parallel.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace abc {

std::uint64_t GrowthFunction::operator()(std::size_t r) const {
  switch (kind) {
    case Kind::sqrt: {
      auto s = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(r)));
      while (s * s > r) --s;
      while (s * s < r) ++s;
      return s;
    }
    case Kind::log2: {
      if (r <= 1) return 0;
      const double l = std::log(static_cast<double>(r));
      return static_cast<std::uint64_t>(std::ceil(l * l - 1e-12));
    }
    case Kind::constant: return c;
  }
  return 0;
}

std::string GrowthFunction::str() const {
  switch (kind) {
    case Kind::sqrt: return "sqrt";
    case Kind::log2: return "log2";
    case Kind::constant: return "const:" + std::to_string(c);
  }
  return {};
}

GrowthFunction GrowthFunction::parse(std::string_view text) {
  if (text == "sqrt") return {Kind::sqrt, 0};
  if (text == "log2") return {Kind::log2, 0};
  if (text.substr(0, 6) == "const:") {
    std::uint64_t c = 0;
    const auto digits = text.substr(6);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), c);
    if (!digits.empty() && ec == std::errc() && ptr == digits.data() + digits.size()) return {Kind::constant, c};
  }
  throw Error("bad growth function '" + std::string(text) + "' (expected sqrt, log2 or const:<c>)");
}

std::vector<ConjugacyKey> ball_keys(const BallIndex& index, const ConjugacyKeyer& keyer, std::size_t threads) {
  if (threads == 0) threads = default_threads();
  std::vector<ConjugacyKey> keys(index.size());
  parallel_shards(index.size(), threads, [&](std::size_t, std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) keys[i] = keyer.key(index.entry(i).element);
  });
  return keys;
}

std::map<ConjugacyKey, std::size_t> sphere_class_histogram(const BallIndex& index, const ConjugacyKeyer& keyer,
                                                           std::size_t r) {
  std::map<ConjugacyKey, std::size_t> hist;
  for (const auto& e : index.sphere(r)) ++hist[keyer.key(e.element)];
  return hist;
}

std::size_t u_f_count(const BallIndex& index, std::uint64_t bound, std::size_t r) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < index.ball_size(r); ++i)
    if (index.entry(i).min_t <= bound) ++n;
  return n;
}

RatioTable ratio_table(const BallIndex& index, const ConjugacyKeyer& keyer, GrowthFunction f, std::size_t threads) {
  const auto keys = ball_keys(index, keyer, threads);
  RatioTable table;
  table.f = f;
  std::map<ConjugacyKey, std::size_t> seen;  // key -> radius of first appearance
  for (std::size_t r = 0; r <= index.radius(); ++r) {
    auto [b, e] = index.sphere_range(r);
    std::map<ConjugacyKey, std::size_t> hist;
    for (std::size_t i = b; i < e; ++i) ++hist[keys[i]];

    RatioRow row;
    row.r = r;
    row.ball = e;
    row.sphere = e - b;
    const std::uint64_t fr = f(r);
    for (const auto& [key, count] : hist) {
      if (!seen.emplace(key, r).second) continue;
      ++row.classes_new;
      if (count <= fr) {
        row.f_size += count;
        ++row.f_classes;
      }
    }
    row.classes_cum = seen.size();
    row.cr = static_cast<double>(row.classes_cum) / static_cast<double>(row.ball);
    row.scr = static_cast<double>(row.classes_new) / static_cast<double>(row.sphere);
    row.u_count = u_f_count(index, fr, r);
    table.rows.push_back(row);
  }
  return table;
}

DecayFit decay_fit(const RatioTable& table) {
  DecayFit fit;
  for (const auto& row : table.rows) {
    if (row.r < 3) continue;
    const double scale = static_cast<double>(row.r) / std::log(static_cast<double>(row.r));
    fit.cr_constant = std::max(fit.cr_constant, row.cr * scale);
    fit.scr_constant = std::max(fit.scr_constant, row.scr * scale);
    ++fit.rows_used;
  }
  if (fit.rows_used < 4) throw Error("decay fit needs at least 4 rows with r >= 3");
  return fit;
}

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace

std::string ratio_csv(const RatioTable& table) {
  std::ostringstream out;
  out << "r,ball,sphere,classes_cum,classes_new,cr,scr,F_size,F_classes,U_count\n";
  for (const auto& row : table.rows)
    out << row.r << ',' << row.ball << ',' << row.sphere << ',' << row.classes_cum << ',' << row.classes_new << ','
        << num(row.cr) << ',' << num(row.scr) << ',' << row.f_size << ',' << row.f_classes << ',' << row.u_count
        << '\n';
  return out.str();
}

std::string gnuplot_script(const RatioTable& table, const DecayFit& fit, const std::string& csv_path) {
  std::ostringstream out;
  out << "set datafile separator ','\n"
      << "set key top right\n"
      << "set xlabel 'r'\n"
      << "set logscale y\n"
      << "set title 'conjugacy ratios, f = " << table.f.str() << "'\n"
      << "C = " << num(fit.cr_constant) << "\n"
      << "Cs = " << num(fit.scr_constant) << "\n"
      << "plot '" << csv_path << "' using 1:6 skip 1 with linespoints title 'cr', \\\n"
      << "     '" << csv_path << "' using 1:7 skip 1 with linespoints title 'scr', \\\n"
      << "     [3:] C*log(x)/x title 'C log r / r', \\\n"
      << "     [3:] Cs*log(x)/x title 'Cs log r / r'\n";
  return out.str();
}

}  // namespace abc
