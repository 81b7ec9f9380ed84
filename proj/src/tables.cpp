#include "mftk/tables.h"

#include "mftk/returns_io.h"

#include <cmath>

namespace mftk::io {

namespace {

void header(std::ostream& out, const Comments& comments, const char* columns) {
    for (const auto& c : comments) out << "# " << c << '\n';
    out << columns << '\n';
}

// NaN/inf are written as "nan" so failed fits stay visible in the table.
std::string num(double v) { return std::isfinite(v) ? format_double(v) : "nan"; }

nlohmann::ordered_json json_num(double v) {
    return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr);
}

}  // namespace

void write_exponents_csv(std::ostream& out, const mfdfa::ScalingExponents& e, const Comments& comments) {
    Comments all = comments;
    all.push_back("fit_scale_range: " + std::to_string(e.fit_min_scale) + ".." + std::to_string(e.fit_max_scale));
    header(out, all, "q,h,h_stderr,tau,r2,intercept,fit_ok");
    for (std::size_t i = 0; i < e.q.size(); ++i)
        out << num(e.q[i]) << ',' << num(e.h[i]) << ',' << num(e.h_stderr[i]) << ',' << num(e.tau[i]) << ','
            << num(e.r2[i]) << ',' << num(e.intercept[i]) << ',' << (e.fit_ok[i] ? 1 : 0) << '\n';
}

void write_fluctuation_csv(std::ostream& out, const mfdfa::FluctuationSurface& s, const Comments& comments) {
    header(out, comments, "q,s,F,segments,zero_segments");
    for (std::size_t iq = 0; iq < s.q.size(); ++iq)
        for (std::size_t is = 0; is < s.scales.size(); ++is)
            out << num(s.q[iq]) << ',' << s.scales[is] << ',' << num(s.at(iq, is)) << ',' << s.segments[is] << ','
                << s.zero_segments[is] << '\n';
}

void write_spectrum_csv(std::ostream& out, const spectrum::SingularitySpectrum& s, const Comments& comments) {
    header(out, comments, "q,alpha,f");
    for (std::size_t i = 0; i < s.q.size(); ++i)
        out << num(s.q[i]) << ',' << num(s.alpha[i]) << ',' << num(s.f[i]) << '\n';
}

void write_envelope_csv(std::ostream& out, const std::vector<spectrum::EnvelopePoint>& env, const Comments& comments) {
    header(out, comments, "alpha,y,argmin_q");
    for (const auto& p : env) out << num(p.alpha) << ',' << num(p.y) << ',' << num(p.argmin_q) << '\n';
}

void write_correlogram_csv(std::ostream& out, const correl::Correlogram& c, const Comments& comments) {
    Comments all = comments;
    all.push_back("transform: " + correl::to_string(c.transform));
    all.push_back("n: " + std::to_string(c.n));
    header(out, all, "lag,acf,band");
    const auto band = num(c.band);
    for (std::size_t k = 0; k < c.acf.size(); ++k) out << k << ',' << num(c.acf[k]) << ',' << band << '\n';
}

void write_daily_peaks_csv(std::ostream& out, const std::vector<correl::DailyPeak>& peaks, const Comments& comments) {
    header(out, comments, "multiple,lag,acf,baseline,prominence");
    for (const auto& p : peaks)
        out << p.multiple << ',' << p.lag << ',' << num(p.value) << ',' << num(p.baseline) << ','
            << num(p.prominence) << '\n';
}

void write_volatility_profile_csv(std::ostream& out, const correl::VolatilityProfile& p, const Comments& comments) {
    Comments all = comments;
    all.push_back("days: " + std::to_string(p.days_used));
    header(out, all, "slot,mean_abs_return");
    for (std::size_t i = 0; i < p.mean_abs_return.size(); ++i) out << i << ',' << num(p.mean_abs_return[i]) << '\n';
}

void write_ensemble_csv(std::ostream& out, const std::vector<double>& d_values, const Comments& comments) {
    header(out, comments, "member,d");
    for (std::size_t i = 0; i < d_values.size(); ++i) out << i << ',' << num(d_values[i]) << '\n';
}

nlohmann::ordered_json to_json(const spectrum::SpectrumSummary& s) {
    nlohmann::ordered_json j;
    j["alpha_min"] = json_num(s.alpha_min);
    j["alpha_max"] = json_num(s.alpha_max);
    j["alpha0"] = json_num(s.alpha0);
    j["width"] = json_num(s.width);
    j["asymmetry"] = json_num(s.asymmetry);
    j["f_max"] = json_num(s.f_max);
    j["alpha0_refined"] = s.refined;
    return j;
}

nlohmann::ordered_json to_json(const surrogate::SurrogateReport& r) {
    nlohmann::ordered_json j;
    j["kind"] = surrogate::to_string(r.kind);
    j["seed"] = r.seed;
    j["ensemble_size"] = r.requested;
    j["ensemble_used"] = r.d_ensemble.size();
    j["failures"] = r.failures;
    j["d_observed"] = json_num(r.d_observed);
    j["p_value"] = json_num(r.p_value);
    j["p_value_display"] = r.p_value_display();
    j["exceeds_all_surrogates"] = r.exceeds_all;
    auto& s = j["ensemble"];
    s["mean"] = json_num(r.summary.mean);
    s["std"] = json_num(r.summary.stddev);
    s["min"] = json_num(r.summary.min);
    s["max"] = json_num(r.summary.max);
    s["p50"] = json_num(r.summary.p50);
    s["p95"] = json_num(r.summary.p95);
    s["p99"] = json_num(r.summary.p99);
    s["p99_9"] = json_num(r.summary.p999);
    j["q_grid"] = r.q_grid;
    j["failure_messages"] = r.failure_messages;
    return j;
}

Comments config_comments(const ConfigEcho& config) {
    Comments out;
    out.reserve(config.size());
    for (const auto& [k, v] : config) out.push_back("config " + k + "=" + v);
    return out;
}

nlohmann::ordered_json to_json(const ConfigEcho& config) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [k, v] : config) j[k] = v;
    return j;
}

}  // namespace mftk::io
