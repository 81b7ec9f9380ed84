#pragma once

#include "mftk/correl.h"
#include "mftk/mfdfa.h"
#include "mftk/spectrum.h"
#include "mftk/surrogate.h"

#include <json.hpp>

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace mftk::io {

// Every table starts with '#' comment lines (provenance, config echo)
// followed by a CSV header row. Numbers use shortest round-trip form.
using Comments = std::vector<std::string>;

void write_exponents_csv(std::ostream& out, const mfdfa::ScalingExponents& e, const Comments& comments = {});
void write_fluctuation_csv(std::ostream& out, const mfdfa::FluctuationSurface& s, const Comments& comments = {});
void write_spectrum_csv(std::ostream& out, const spectrum::SingularitySpectrum& s, const Comments& comments = {});
void write_envelope_csv(std::ostream& out, const std::vector<spectrum::EnvelopePoint>& env,
                        const Comments& comments = {});
void write_correlogram_csv(std::ostream& out, const correl::Correlogram& c, const Comments& comments = {});
void write_daily_peaks_csv(std::ostream& out, const std::vector<correl::DailyPeak>& peaks,
                           const Comments& comments = {});
void write_volatility_profile_csv(std::ostream& out, const correl::VolatilityProfile& p,
                                  const Comments& comments = {});
void write_ensemble_csv(std::ostream& out, const std::vector<double>& d_values, const Comments& comments = {});

nlohmann::ordered_json to_json(const spectrum::SpectrumSummary& s);
nlohmann::ordered_json to_json(const surrogate::SurrogateReport& r);

// "key=value" pairs, in the given order, as echoed into table headers and reports.
using ConfigEcho = std::vector<std::pair<std::string, std::string>>;
Comments config_comments(const ConfigEcho& config);
nlohmann::ordered_json to_json(const ConfigEcho& config);

}  // namespace mftk::io
