#include "boolfilter/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>

#include "boolfilter/io.hpp"

namespace boolfilter {

namespace {

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

std::vector<Estimator> enabled(const ExperimentConfig& c)
{
    std::vector<Estimator> out;
    if (c.use_mfa)
        out.push_back(Estimator::mfa);
    if (c.use_bkf)
        out.push_back(Estimator::bkf);
    return out;
}

} // namespace

std::string results_csv(const std::vector<ExperimentResult>& results)
{
    std::ostringstream os;
    os << "experiment,graph,n,trial,t,estimator,ter,wall_ms\n";
    for (const auto& res : results) {
        const auto& c = res.config;
        const std::string prefix = csv_field(c.experiment) + "," + csv_field(c.graph.label()) + "," +
                                   std::to_string(res.n) + ",";
        for (const auto& trial : res.trials) {
            for (const auto& s : trial.steps) {
                for (Estimator e : enabled(c)) {
                    const bool m = e == Estimator::mfa;
                    os << prefix << trial.trial << ',' << s.t << ',' << to_string(e) << ','
                       << format_real(m ? s.mfa_ter : s.bkf_ter) << ',';
                    if (c.timing)
                        os << format_real(m ? s.mfa_ms : s.bkf_ms);
                    os << '\n';
                }
            }
        }
    }
    return os.str();
}

std::string summary_csv(const std::vector<ExperimentResult>& results)
{
    std::ostringstream os;
    os << "experiment,graph,n,estimator,mean_ter,stderr_ter,mean_wall_ms\n";
    for (const auto& res : results) {
        for (const auto& r : res.summary.rows) {
            os << csv_field(r.experiment) << ',' << csv_field(r.graph) << ',' << r.n << ','
               << to_string(r.estimator) << ',' << format_real(r.mean_ter) << ','
               << format_real(r.stderr_ter) << ',';
            if (res.config.timing)
                os << format_real(r.mean_wall_ms);
            os << '\n';
        }
    }
    return os.str();
}

std::string gap_csv(const ExperimentConfig& config, std::size_t n, const std::vector<GapSeries>& series)
{
    std::ostringstream os;
    os << "experiment,graph,n,trial,t,predict_gap,update_gap\n";
    for (const auto& g : series)
        for (std::size_t t = 0; t < g.after_predict.size(); ++t)
            os << csv_field(config.experiment) << ',' << csv_field(config.graph.label()) << ',' << n << ','
               << g.trial << ',' << t + 1 << ',' << format_real(g.after_predict[t]) << ','
               << format_real(g.after_update[t]) << '\n';
    return os.str();
}

std::string bench_csv(const std::vector<BenchRow>& rows)
{
    std::ostringstream os;
    os << "graph,n,estimator,runs,mean_wall_ms\n";
    for (const auto& r : rows)
        os << csv_field(r.graph) << ',' << r.n << ',' << to_string(r.estimator) << ',' << r.runs << ','
           << format_real(r.mean_wall_ms) << '\n';
    return os.str();
}

namespace {

struct Series {
    std::string name;
    std::string color;
    std::vector<std::pair<double, double>> points;
};

std::string render_svg(const std::string& title, const std::string& x_label, const std::string& y_label,
                       const std::vector<Series>& series, bool log_y)
{
    constexpr double W = 640, H = 400, L = 70, R = 20, T = 40, B = 50;
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    auto ty = [log_y](double v) { return log_y ? std::log10(std::max(v, 1e-9)) : v; };
    for (const auto& s : series)
        for (auto [x, y] : s.points) {
            x0 = std::min(x0, x);
            x1 = std::max(x1, x);
            y0 = std::min(y0, ty(y));
            y1 = std::max(y1, ty(y));
        }
    if (!std::isfinite(x0)) {
        x0 = 0;
        x1 = 1;
        y0 = 0;
        y1 = 1;
    }
    if (x1 == x0)
        x1 = x0 + 1;
    if (y1 == y0) {
        y0 -= 0.5;
        y1 += 0.5;
    }
    const double pad = 0.05 * (y1 - y0);
    y0 -= pad;
    y1 += pad;
    auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
    auto py = [&](double y) { return H - B - (ty(y) - y0) / (y1 - y0) * (H - T - B); };

    std::ostringstream os;
    char buf[160];
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\" font-family=\"sans-serif\" "
          "font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"320\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << title << "</text>\n";
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n", L, H - B, W - R,
                  H - B);
    os << buf;
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n", L, T, L, H - B);
    os << buf;
    for (int k = 0; k <= 4; ++k) {
        const double xv = x0 + (x1 - x0) * k / 4.0;
        const double yv = y0 + (y1 - y0) * k / 4.0;
        std::snprintf(buf, sizeof buf, "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\">%.4g</text>\n",
                      L + (W - L - R) * k / 4.0, H - B + 16, xv);
        os << buf;
        std::snprintf(buf, sizeof buf, "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"end\">%.4g</text>\n", L - 6,
                      H - B - (H - T - B) * k / 4.0 + 4, log_y ? std::pow(10.0, yv) : yv);
        os << buf;
    }
    os << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 10 << "\" text-anchor=\"middle\">" << x_label
       << "</text>\n";
    os << "<text x=\"16\" y=\"" << (T + H - B) / 2 << "\" transform=\"rotate(-90 16 " << (T + H - B) / 2
       << ")\" text-anchor=\"middle\">" << y_label << "</text>\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& s = series[i];
        os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"2\" points=\"";
        for (auto [x, y] : s.points) {
            std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(x), py(y));
            os << buf;
        }
        os << "\"/>\n";
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%.1f\" y=\"%.1f\" fill=\"%s\">%s</text>\n", W - R - 60, T + 16.0 * (i + 1),
                      s.color.c_str(), s.name.c_str());
        os << buf;
    }
    os << "</svg>\n";
    return os.str();
}

const char* color_of(Estimator e) { return e == Estimator::mfa ? "#1f77b4" : "#d62728"; }

} // namespace

std::string ter_svg(const std::vector<ExperimentResult>& results)
{
    std::vector<Series> series;
    if (results.empty())
        return render_svg("TER", "t", "TER", series, false);
    const auto& c = results.front().config;
    if (results.size() == 1) {
        const auto& res = results.front();
        for (Estimator e : enabled(c)) {
            Series s{to_string(e), color_of(e), {}};
            for (std::size_t t = 0; t < c.horizon; ++t) {
                std::vector<double> v;
                for (const auto& trial : res.trials)
                    v.push_back(e == Estimator::mfa ? trial.steps[t].mfa_ter : trial.steps[t].bkf_ter);
                s.points.emplace_back(static_cast<double>(t + 1), stable_sum(v) / static_cast<double>(v.size()));
            }
            series.push_back(std::move(s));
        }
        return render_svg(c.experiment + " (" + c.graph.label() + ", n=" + std::to_string(res.n) + ")",
                          "time step", "mean TER", series, false);
    }
    for (Estimator e : enabled(c)) {
        Series s{to_string(e), color_of(e), {}};
        for (const auto& res : results)
            if (const SummaryRow* row = res.summary.find(res.n, e))
                s.points.emplace_back(static_cast<double>(res.n), row->mean_ter);
        series.push_back(std::move(s));
    }
    return render_svg(c.experiment + " (" + c.graph.label() + ")", "n", "mean TER", series, false);
}

std::string bench_svg(const std::vector<BenchRow>& rows)
{
    std::map<Estimator, Series> by;
    for (const auto& r : rows) {
        auto& s = by[r.estimator];
        s.name = to_string(r.estimator);
        s.color = color_of(r.estimator);
        s.points.emplace_back(static_cast<double>(r.n), r.mean_wall_ms);
    }
    std::vector<Series> series;
    for (auto& [e, s] : by)
        series.push_back(std::move(s));
    return render_svg("estimator runtime", "n", "ms per run", series, true);
}

} // namespace boolfilter
