#include "boolfilter/config.hpp"

#include <algorithm>
#include <cctype>

#include <json.hpp>

#include "boolfilter/io.hpp"

namespace boolfilter {

using json = nlohmann::json;

namespace {

std::string lower(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

double real_field(const json& doc, const char* key)
{
    if (!doc[key].is_number())
        throw ConfigError(key, "expected a number");
    return doc[key].get<double>();
}

std::size_t count_field(const json& doc, const char* key)
{
    if (!doc[key].is_number_unsigned())
        throw ConfigError(key, "expected a non-negative integer");
    return doc[key].get<std::size_t>();
}

} // namespace

GraphFamily parse_family(const std::string& name)
{
    const std::string v = lower(name);
    if (v == "ring")
        return GraphFamily::ring;
    if (v == "er" || v == "erdos_renyi" || v == "erdos-renyi")
        return GraphFamily::erdos_renyi;
    if (v == "file")
        return GraphFamily::file;
    throw ConfigError("graph", "unknown graph family '" + name + "' (ring, er, file)");
}

Estimator parse_estimator(const std::string& name)
{
    const std::string v = lower(name);
    if (v == "mfa")
        return Estimator::mfa;
    if (v == "bkf")
        return Estimator::bkf;
    throw ConfigError("estimators", "unknown estimator '" + name + "' (MFA, BKF)");
}

void set_estimators(ExperimentConfig& config, const std::vector<std::string>& names)
{
    config.use_mfa = false;
    config.use_bkf = false;
    for (const auto& name : names) {
        if (parse_estimator(name) == Estimator::mfa)
            config.use_mfa = true;
        else
            config.use_bkf = true;
    }
}

std::vector<ExperimentConfig> RunConfig::expand() const
{
    if (sizes.empty() || base.graph.family == GraphFamily::file)
        return {base};
    std::vector<ExperimentConfig> out;
    for (std::size_t n : sizes) {
        ExperimentConfig c = base;
        c.graph.n = n;
        out.push_back(std::move(c));
    }
    return out;
}

RunConfig parse_config(const std::string& json_text)
{
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError("config", e.what());
    }
    if (!doc.is_object())
        throw ConfigError("config", "expected a JSON object");

    static const char* const known[] = {"experiment", "graph",   "n",           "sizes",      "edge_prob",
                                        "graph_path", "alpha",   "p",           "q",          "rho",
                                        "horizon",    "trials",  "clean_count", "estimators", "master_seed",
                                        "workers",    "timing",  "gap_probe"};
    for (const auto& item : doc.items())
        if (std::find(std::begin(known), std::end(known), item.key()) == std::end(known))
            throw ConfigError(item.key(), "unknown configuration key");

    RunConfig rc;
    ExperimentConfig& c = rc.base;
    if (doc.contains("experiment")) {
        if (!doc["experiment"].is_string())
            throw ConfigError("experiment", "expected a string");
        c.experiment = doc["experiment"].get<std::string>();
    }
    if (doc.contains("graph")) {
        if (!doc["graph"].is_string())
            throw ConfigError("graph", "expected a string");
        c.graph.family = parse_family(doc["graph"].get<std::string>());
    }
    if (doc.contains("n"))
        c.graph.n = count_field(doc, "n");
    if (doc.contains("sizes")) {
        if (!doc["sizes"].is_array())
            throw ConfigError("sizes", "expected an array of node counts");
        for (const auto& v : doc["sizes"]) {
            if (!v.is_number_unsigned())
                throw ConfigError("sizes", "expected non-negative integers");
            rc.sizes.push_back(v.get<std::size_t>());
        }
    }
    if (doc.contains("edge_prob"))
        c.graph.edge_prob = real_field(doc, "edge_prob");
    if (doc.contains("graph_path")) {
        if (!doc["graph_path"].is_string())
            throw ConfigError("graph_path", "expected a string");
        c.graph.path = doc["graph_path"].get<std::string>();
    }
    if (doc.contains("alpha"))
        c.alpha = real_field(doc, "alpha");
    if (doc.contains("p"))
        c.p = real_field(doc, "p");
    if (doc.contains("q"))
        c.q = real_field(doc, "q");
    if (doc.contains("rho"))
        c.rho = real_field(doc, "rho");
    if (doc.contains("horizon"))
        c.horizon = count_field(doc, "horizon");
    if (doc.contains("trials"))
        c.trials = count_field(doc, "trials");
    if (doc.contains("clean_count"))
        c.clean_count = count_field(doc, "clean_count");
    if (doc.contains("workers"))
        c.workers = count_field(doc, "workers");
    if (doc.contains("master_seed")) {
        c.master_seed = count_field(doc, "master_seed");
        rc.seed_given = true;
    }
    if (doc.contains("estimators")) {
        if (!doc["estimators"].is_array())
            throw ConfigError("estimators", "expected an array such as [\"MFA\", \"BKF\"]");
        std::vector<std::string> names;
        for (const auto& v : doc["estimators"]) {
            if (!v.is_string())
                throw ConfigError("estimators", "expected strings");
            names.push_back(v.get<std::string>());
        }
        set_estimators(c, names);
    }
    for (const char* key : {"timing", "gap_probe"}) {
        if (doc.contains(key) && !doc[key].is_boolean())
            throw ConfigError(key, "expected true or false");
    }
    if (doc.contains("timing"))
        c.timing = doc["timing"].get<bool>();
    if (doc.contains("gap_probe"))
        rc.gap_probe = doc["gap_probe"].get<bool>();
    return rc;
}

RunConfig load_config(const std::filesystem::path& path)
{
    std::string text;
    try {
        text = read_file(path);
    } catch (const std::runtime_error& e) {
        throw ConfigError("config", e.what());
    }
    RunConfig rc = parse_config(text);
    // relative graph paths resolve against the config file's directory
    auto& gp = rc.base.graph.path;
    if (!gp.empty() && std::filesystem::path(gp).is_relative())
        gp = (path.parent_path() / gp).string();
    return rc;
}

} // namespace boolfilter
