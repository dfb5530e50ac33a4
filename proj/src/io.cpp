#include "gmclust/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace gmclust {

namespace {

std::vector<std::string> split_csv_line(const std::string& line)
{
    std::vector<std::string> out;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                field += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(std::move(field));
            field.clear();
        } else if (c != '\r') {
            field += c;
        }
    }
    out.push_back(std::move(field));
    return out;
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"')
            q += '"';
        q += c;
    }
    return q + '"';
}

std::string trim(std::string s)
{
    const auto b = s.find_first_not_of(" \t");
    const auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

std::size_t parse_index(const std::string& s, const std::string& where)
{
    std::size_t v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw DataError(where + ": '" + s + "' is not a nonnegative integer");
    return v;
}

std::ifstream open_in(const fs::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw DataError("cannot open '" + path.string() + "' for reading");
    return in;
}

std::ofstream open_out(const fs::path& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw DataError("cannot open '" + path.string() + "' for writing");
    return out;
}

// JSON has no inf/nan; those travel as strings
json num(double x)
{
    if (std::isfinite(x))
        return x;
    return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
}

double num_from(const json& j)
{
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf")
            return std::numeric_limits<double>::infinity();
        if (s == "-inf")
            return -std::numeric_limits<double>::infinity();
        if (s == "nan")
            return std::numeric_limits<double>::quiet_NaN();
        throw DataError("'" + s + "' is not a number");
    }
    return j.get<double>();
}

json nums(std::span<const double> xs)
{
    json a = json::array();
    for (double x : xs)
        a.push_back(num(x));
    return a;
}

std::vector<double> nums_from(const json& j)
{
    std::vector<double> out;
    for (const auto& x : j)
        out.push_back(num_from(x));
    return out;
}

template <typename T>
void get_opt(const json& j, const char* key, T& into)
{
    if (j.contains(key))
        j.at(key).get_to(into);
}

json range_json(const IndexRange& r)
{
    return json::array({r.first, r.last});
}

IndexRange range_from(const json& j, const std::string& where)
{
    if (!j.is_array() || j.size() != 2)
        throw DataError(where + ": expected [first, last]");
    return {j[0].get<std::size_t>(), j[1].get<std::size_t>()};
}

} // namespace

std::string format_double(double x)
{
    char buf[64];
    const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, p);
}

double parse_double(std::string_view s, const std::string& where)
{
    double v = 0.0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw DataError(where + ": '" + std::string(s) + "' is not a number");
    if (!std::isfinite(v))
        throw DataError(where + ": non-finite value '" + std::string(s) + "'");
    return v;
}

Dataset parse_dataset(std::istream& csv, const std::string& source, const json* metadata, std::size_t default_horizon)
{
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(csv, line))
        throw DataError(source + ": empty file");
    ++line_no;
    {
        auto head = split_csv_line(line);
        for (auto& h : head)
            h = trim(h);
        if (head != std::vector<std::string>{"series_id", "t", "value"})
            throw DataError(source + ":1: expected header 'series_id,t,value'");
    }

    std::vector<std::string> order;
    std::map<std::string, std::vector<std::pair<std::size_t, double>>> raw;
    while (std::getline(csv, line)) {
        ++line_no;
        if (trim(line).empty())
            continue;
        const std::string where = source + ":" + std::to_string(line_no);
        auto f = split_csv_line(line);
        if (f.size() != 3)
            throw DataError(where + ": expected 3 fields, got " + std::to_string(f.size()));
        const std::string id = trim(f[0]);
        if (id.empty())
            throw DataError(where + ": empty series_id");
        auto [it, fresh] = raw.try_emplace(id);
        if (fresh)
            order.push_back(id);
        it->second.emplace_back(parse_index(trim(f[1]), where), parse_double(trim(f[2]), where));
    }
    if (order.empty())
        throw DataError(source + ": no observations");

    if (metadata && !metadata->is_object())
        throw DataError(source + ": metadata must be a JSON object keyed by series_id");
    if (metadata)
        for (const auto& [key, _] : metadata->items())
            if (!raw.contains(key))
                throw DataError("metadata names series '" + key + "' which is not in " + source);

    std::vector<TimeSeries> series;
    std::vector<SplitSpec> splits;
    for (const auto& id : order) {
        auto obs = raw[id];
        std::stable_sort(obs.begin(), obs.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<double> values;
        for (std::size_t k = 0; k < obs.size(); ++k) {
            if (obs[k].first != k + 1)
                throw DataError(source + ": malformed series '" + id + "': expected t=" + std::to_string(k + 1) +
                                ", found t=" + std::to_string(obs[k].first));
            values.push_back(obs[k].second);
        }

        std::size_t period = 1;
        std::optional<SplitSpec> split;
        try {
            if (metadata && metadata->contains(id)) {
                const json& m = metadata->at(id);
                get_opt(m, "seasonal_period", period);
                if (m.contains("split")) {
                    const json& s = m.at("split");
                    SplitSpec sp;
                    sp.test_horizon = s.value("test_horizon", default_horizon);
                    if (!s.contains("train") && !s.contains("validation")) {
                        sp = default_split(values.size(), sp.test_horizon);
                    } else {
                        sp.train = range_from(s.at("train"), "series '" + id + "' train");
                        sp.validation = range_from(s.at("validation"), "series '" + id + "' validation");
                        sp.validation_follows_lag = s.value("validation_follows_lag", false);
                    }
                    split = sp;
                }
            }
            if (!split)
                split = default_split(values.size(), default_horizon);
            split->validate(values.size());
        } catch (const InvalidArgument& e) {
            throw DataError(source + ": series '" + id + "': " + e.what());
        } catch (const json::exception& e) {
            throw DataError("metadata for series '" + id + "': " + e.what());
        }
        series.emplace_back(id, std::move(values), period);
        splits.push_back(*split);
    }
    return Dataset(std::move(series), std::move(splits));
}

Dataset read_dataset(const fs::path& csv, const std::optional<fs::path>& metadata, std::size_t default_horizon)
{
    auto in = open_in(csv);
    if (!metadata)
        return parse_dataset(in, csv.string(), nullptr, default_horizon);
    const json meta = read_json(*metadata);
    return parse_dataset(in, csv.string(), &meta, default_horizon);
}

std::vector<LongSeries> read_long_csv(const fs::path& path)
{
    auto in = open_in(path);
    const std::string source = path.string();
    std::string line;
    std::size_t line_no = 1;
    if (!std::getline(in, line))
        throw DataError(source + ": empty file");
    std::vector<LongSeries> out;
    std::map<std::string, std::size_t> index;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty())
            continue;
        const std::string where = source + ":" + std::to_string(line_no);
        auto f = split_csv_line(line);
        if (f.size() != 3)
            throw DataError(where + ": expected 3 fields, got " + std::to_string(f.size()));
        const std::string id = trim(f[0]);
        auto [it, fresh] = index.try_emplace(id, out.size());
        if (fresh)
            out.push_back({id, {}, {}});
        out[it->second].t.push_back(parse_index(trim(f[1]), where));
        out[it->second].values.push_back(parse_double(trim(f[2]), where));
    }
    return out;
}

json dataset_metadata(const Dataset& data)
{
    json j = json::object();
    for (std::size_t i = 0; i < data.size(); ++i) {
        const SplitSpec& s = data.splits[i];
        json split = {{"train", range_json(s.train)},
                      {"validation", range_json(s.validation)},
                      {"test_horizon", s.test_horizon}};
        if (s.validation_follows_lag)
            split["validation_follows_lag"] = true;
        j[data.series[i].id] = {{"seasonal_period", data.series[i].seasonal_period}, {"split", split}};
    }
    return j;
}

void write_dataset(const Dataset& data, const fs::path& csv, const std::optional<fs::path>& metadata)
{
    std::ostringstream os;
    os << "series_id,t,value\n";
    for (const auto& s : data.series) {
        const std::string id = csv_field(s.id);
        for (std::size_t t = 0; t < s.values.size(); ++t)
            os << id << ',' << t + 1 << ',' << format_double(s.values[t]) << '\n';
    }
    write_text(os.str(), csv);
    if (metadata)
        write_json(dataset_metadata(data), *metadata);
}

void write_labels(const Dataset& data, std::span<const std::size_t> labels, const fs::path& path)
{
    if (labels.size() != data.size())
        throw InvalidArgument("labels do not match dataset size");
    std::ostringstream os;
    os << "series_id,label\n";
    for (std::size_t i = 0; i < data.size(); ++i)
        os << csv_field(data.series[i].id) << ',' << labels[i] << '\n';
    write_text(os.str(), path);
}

std::vector<std::size_t> read_labels(const fs::path& path, const Dataset* order)
{
    auto in = open_in(path);
    std::string line;
    std::size_t line_no = 1;
    if (!std::getline(in, line))
        throw DataError(path.string() + ": empty file");
    std::vector<std::pair<std::string, std::size_t>> rows;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty())
            continue;
        const std::string where = path.string() + ":" + std::to_string(line_no);
        auto f = split_csv_line(line);
        if (f.size() != 2)
            throw DataError(where + ": expected series_id,label");
        rows.emplace_back(trim(f[0]), parse_index(trim(f[1]), where));
    }
    if (!order) {
        std::vector<std::size_t> out;
        for (auto& r : rows)
            out.push_back(r.second);
        return out;
    }
    std::map<std::string, std::size_t> by_id(rows.begin(), rows.end());
    std::vector<std::size_t> out;
    for (const auto& s : order->series) {
        auto it = by_id.find(s.id);
        if (it == by_id.end())
            throw DataError(path.string() + ": no label for series '" + s.id + "'");
        out.push_back(it->second);
    }
    return out;
}

json read_json(const fs::path& path)
{
    auto in = open_in(path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

void write_text(const std::string& text, const fs::path& path)
{
    auto out = open_out(path);
    out << text;
    out.flush();
    if (!out)
        throw DataError("failed writing '" + path.string() + "'");
}

void write_json(const json& j, const fs::path& path)
{
    write_text(j.dump(2) + "\n", path);
}

// ---- configs and models ----

void to_json(json& j, const ForestConfig& c)
{
    j = {{"trees", c.trees},
         {"max_depth", c.max_depth},
         {"min_leaf", c.min_leaf},
         {"features_per_split", c.features_per_split},
         {"bootstrap", c.bootstrap},
         {"seed", c.seed}};
}

void from_json(const json& j, ForestConfig& c)
{
    get_opt(j, "trees", c.trees);
    get_opt(j, "max_depth", c.max_depth);
    get_opt(j, "min_leaf", c.min_leaf);
    get_opt(j, "features_per_split", c.features_per_split);
    get_opt(j, "bootstrap", c.bootstrap);
    get_opt(j, "seed", c.seed);
}

void to_json(json& j, const CpagmConfig& c)
{
    j = {{"k", c.k},
         {"lag_order", c.lag_order},
         {"max_iter", c.max_iter},
         {"patience", c.patience},
         {"restarts", c.restarts},
         {"policy", to_string(c.policy)},
         {"model", to_string(c.model)},
         {"forest", c.forest},
         {"seed", c.seed},
         {"threads", c.threads}};
}

void from_json(const json& j, CpagmConfig& c)
{
    get_opt(j, "k", c.k);
    get_opt(j, "lag_order", c.lag_order);
    get_opt(j, "max_iter", c.max_iter);
    get_opt(j, "patience", c.patience);
    get_opt(j, "restarts", c.restarts);
    if (j.contains("policy"))
        c.policy = parse_policy(j.at("policy").get<std::string>());
    if (j.contains("model"))
        c.model = parse_model_kind(j.at("model").get<std::string>());
    get_opt(j, "forest", c.forest);
    get_opt(j, "seed", c.seed);
    get_opt(j, "threads", c.threads);
}

void to_json(json& j, const GlobalModel& m)
{
    const FitMetadata& md = m.metadata();
    j = {{"kind", to_string(m.kind())},
         {"lag_order", m.lag_order()},
         {"metadata",
          {{"pooled_rows", md.pooled_rows}, {"rows_per_series", md.rows_per_series}, {"ridge_fallback", md.ridge_fallback}}}};
    if (m.kind() == ModelKind::linear) {
        j["intercept"] = num(m.linear().intercept);
        j["coefficients"] = nums(m.linear().coefficients);
        return;
    }
    const RegressionForest& f = m.forest();
    j["config"] = f.config();
    j["features"] = f.features();
    json trees = json::array();
    for (const auto& t : f.trees()) {
        // node: [feature, threshold, left, right, value]
        json nodes = json::array();
        for (const auto& n : t.nodes())
            nodes.push_back(json::array({n.feature, num(n.threshold), n.left, n.right, num(n.value)}));
        trees.push_back(std::move(nodes));
    }
    j["trees"] = std::move(trees);
}

void from_json(const json& j, GlobalModel& m)
{
    FitMetadata md;
    if (j.contains("metadata")) {
        const json& x = j.at("metadata");
        get_opt(x, "pooled_rows", md.pooled_rows);
        get_opt(x, "rows_per_series", md.rows_per_series);
        get_opt(x, "ridge_fallback", md.ridge_fallback);
    }
    const ModelKind kind = parse_model_kind(j.at("kind").get<std::string>());
    if (kind == ModelKind::linear) {
        LinearModel lin;
        lin.intercept = num_from(j.at("intercept"));
        lin.coefficients = nums_from(j.at("coefficients"));
        m = GlobalModel(std::move(lin), std::move(md));
        return;
    }
    std::vector<RegressionTree> trees;
    for (const auto& t : j.at("trees")) {
        std::vector<TreeNode> nodes;
        for (const auto& n : t) {
            TreeNode node;
            node.feature = n.at(0).get<int>();
            node.threshold = num_from(n.at(1));
            node.left = n.at(2).get<std::uint32_t>();
            node.right = n.at(3).get<std::uint32_t>();
            node.value = num_from(n.at(4));
            nodes.push_back(node);
        }
        trees.emplace_back(std::move(nodes));
    }
    m = GlobalModel(RegressionForest(j.at("config").get<ForestConfig>(), j.at("features").get<std::size_t>(), std::move(trees)),
                    std::move(md));
}

void to_json(json& j, const Partition& p)
{
    j = {{"labels", p.labels}, {"k", p.k}, {"objective", p.objective ? num(*p.objective) : json(nullptr)}};
}

void from_json(const json& j, Partition& p)
{
    std::optional<double> obj;
    if (j.contains("objective") && !j.at("objective").is_null())
        obj = num_from(j.at("objective"));
    p = Partition(j.at("labels").get<std::vector<std::size_t>>(), j.at("k").get<std::size_t>(), obj);
}

void to_json(json& j, const CpagmResult& r)
{
    json protos = json::array();
    for (const auto& p : r.prototypes)
        protos.push_back(p ? json(*p) : json(nullptr));
    j = {{"partition", r.partition},
         {"prototypes", std::move(protos)},
         {"objective_trace", nums(r.objective_trace)},
         {"label_trace", r.label_trace},
         {"iterations", r.iterations},
         {"j_opt", num(r.j_opt)},
         {"mean_objective", num(r.mean_objective())},
         {"converged", to_string(r.converged)},
         {"restart", r.restart},
         {"config", r.config}};
}

void from_json(const json& j, CpagmResult& r)
{
    r.partition = j.at("partition").get<Partition>();
    r.prototypes.clear();
    for (const auto& p : j.at("prototypes"))
        r.prototypes.push_back(p.is_null() ? std::nullopt : std::optional<GlobalModel>(p.get<GlobalModel>()));
    r.objective_trace = nums_from(j.at("objective_trace"));
    r.label_trace = j.at("label_trace").get<std::vector<std::vector<std::size_t>>>();
    r.iterations = j.at("iterations").get<std::size_t>();
    r.j_opt = num_from(j.at("j_opt"));
    r.converged = parse_stop_reason(j.at("converged").get<std::string>());
    r.restart = j.at("restart").get<std::size_t>();
    r.config = j.at("config").get<CpagmConfig>();
}

json result_document(const CpagmResult& r, const json& meta)
{
    json j = r;
    j["meta"] = meta;
    return j;
}

void to_json(json& j, const SetarProcess& s)
{
    j = {{"regime1", nums(s.regime1)}, {"regime2", nums(s.regime2)}, {"threshold", num(s.threshold)}, {"delay", s.delay}};
}

void from_json(const json& j, SetarProcess& s)
{
    s.regime1 = nums_from(j.at("regime1"));
    s.regime2 = nums_from(j.at("regime2"));
    s.threshold = num_from(j.at("threshold"));
    s.delay = j.at("delay").get<std::size_t>();
}

void to_json(json& j, const ScenarioSpec& s)
{
    json ar = json::array();
    for (const auto& phi : s.ar_processes)
        ar.push_back(nums(phi));
    j = {{"kind", s.kind == ScenarioKind::ar ? "ar" : "setar"},
         {"ar_processes", std::move(ar)},
         {"setar_processes", s.setar_processes},
         {"coefficient_noise",
          s.coefficient_noise ? json::array({s.coefficient_noise->first, s.coefficient_noise->second}) : json(nullptr)},
         {"length", s.length},
         {"per_process", s.per_process},
         {"burn_in", s.burn_in},
         {"seed", s.seed},
         {"significant_lags", s.significant_lags},
         {"test_horizon", s.test_horizon},
         {"policy", to_string(s.policy)},
         {"innovation_sd", s.innovation_sd}};
}

void from_json(const json& j, ScenarioSpec& s)
{
    const std::size_t length = j.value("length", s.length);
    const std::size_t per = j.value("per_process", s.per_process);
    const std::uint64_t seed = j.value("seed", s.seed);
    if (j.contains("preset")) {
        const auto p = j.at("preset").get<std::string>();
        if (p == "scenario1" || p == "1")
            s = scenario1(length, per, seed);
        else if (p == "scenario2" || p == "2")
            s = scenario2(length, per, seed);
        else if (p == "scenario2-noisy" || p == "2-noisy")
            s = scenario2(length, per, seed, true);
        else if (p == "scenario3" || p == "3")
            s = scenario3(length, per, seed);
        else
            throw InvalidArgument("unknown scenario preset '" + p + "'");
    }
    if (j.contains("kind")) {
        const auto k = j.at("kind").get<std::string>();
        if (k != "ar" && k != "setar")
            throw InvalidArgument("scenario kind must be 'ar' or 'setar', got '" + k + "'");
        s.kind = k == "ar" ? ScenarioKind::ar : ScenarioKind::setar;
    }
    if (j.contains("ar_processes")) {
        s.ar_processes.clear();
        for (const auto& phi : j.at("ar_processes"))
            s.ar_processes.push_back(nums_from(phi));
    }
    get_opt(j, "setar_processes", s.setar_processes);
    if (j.contains("coefficient_noise")) {
        const json& c = j.at("coefficient_noise");
        if (c.is_null())
            s.coefficient_noise.reset();
        else
            s.coefficient_noise = std::pair{c.at(0).get<double>(), c.at(1).get<double>()};
    }
    s.length = length;
    s.per_process = per;
    s.seed = seed;
    get_opt(j, "burn_in", s.burn_in);
    get_opt(j, "significant_lags", s.significant_lags);
    get_opt(j, "test_horizon", s.test_horizon);
    if (j.contains("policy"))
        s.policy = parse_policy(j.at("policy").get<std::string>());
    get_opt(j, "innovation_sd", s.innovation_sd);
}

void to_json(json& j, const GridSpec& g)
{
    j = {{"k_values", g.k_values},
         {"l_values", g.l_values},
         {"metric", to_string(g.metric)},
         {"base", g.base},
         {"seed", g.seed},
         {"threads", g.threads}};
    if (g.two_stage)
        j["two_stage"] = {{"selection_horizon", g.two_stage->selection_horizon},
                          {"evaluation_horizon", g.two_stage->evaluation_horizon}};
}

void from_json(const json& j, GridSpec& g)
{
    get_opt(j, "k_values", g.k_values);
    get_opt(j, "l_values", g.l_values);
    if (j.contains("metric"))
        g.metric = parse_metric(j.at("metric").get<std::string>());
    get_opt(j, "base", g.base);
    get_opt(j, "seed", g.seed);
    get_opt(j, "threads", g.threads);
    if (j.contains("two_stage") && !j.at("two_stage").is_null())
        g.two_stage = TwoStage{j.at("two_stage").at("selection_horizon").get<std::size_t>(),
                               j.at("two_stage").at("evaluation_horizon").get<std::size_t>()};
}

void to_json(json& j, const GridCell& c)
{
    j = {{"k", c.k},
         {"lag_order", c.lag_order},
         {"status", c.status == CellStatus::ok ? "ok" : "failed"},
         {"seed", c.seed}};
    if (c.status == CellStatus::ok)
        j["avg_error"] = num(c.avg_error);
    else
        j["reason"] = c.reason;
    if (c.eval_error)
        j["eval_error"] = num(*c.eval_error);
}

void to_json(json& j, const TestEvaluation& e)
{
    json per = json::array();
    for (const auto& v : e.per_series)
        per.push_back(v ? num(*v) : json(nullptr));
    j = {{"per_series", std::move(per)}, {"average", num(e.average)}, {"excluded", e.excluded}};
}

void to_json(json& j, const LmResult& r)
{
    json models = json::array();
    for (const auto& m : r.models)
        models.push_back(m ? json{{"ar_order", m->ar_order},
                                  {"intercept", num(m->intercept)},
                                  {"coefficients", nums(m->coefficients)},
                                  {"aicc", num(m->aicc)}}
                           : json(nullptr));
    json per = json::array();
    for (const auto& v : r.per_series)
        per.push_back(v ? num(*v) : json(nullptr));
    j = {{"method", "lm"},
         {"models", std::move(models)},
         {"per_series", std::move(per)},
         {"failures", r.failures},
         {"average", num(r.average)},
         {"excluded", r.excluded}};
    if (r.partition)
        j["partition"] = *r.partition;
}

void to_json(json& j, const GmapResult& r)
{
    j = {{"method", "gmap"}, {"average", num(r.average)}, {"per_rep", nums(r.per_rep)}};
}

void to_json(json& j, const GmfbcResult& r)
{
    json protos = json::array();
    for (const auto& p : r.prototypes)
        protos.push_back(p ? json(*p) : json(nullptr));
    j = {{"method", "gmfbc"},
         {"partition", r.partition},
         {"prototypes", std::move(protos)},
         {"evaluation", r.evaluation},
         {"kmeans_trace", nums(r.kmeans_trace)}};
}

// ---- tables ----

std::string grid_csv(const GridResult& grid, ErrorMetric metric)
{
    std::ostringstream os;
    os << "K,l,metric,avg_error,eval_error,status,seed,reason\n";
    for (const auto& c : grid.cells) {
        os << c.k << ',' << c.lag_order << ',' << to_string(metric) << ','
           << (c.status == CellStatus::ok ? format_double(c.avg_error) : "") << ','
           << (c.eval_error ? format_double(*c.eval_error) : "") << ',' << (c.status == CellStatus::ok ? "ok" : "failed") << ','
           << c.seed << ',' << csv_field(c.reason) << '\n';
    }
    return os.str();
}

void write_grid_csv(const GridResult& grid, ErrorMetric metric, const fs::path& path)
{
    write_text(grid_csv(grid, metric), path);
}

std::string benchmark_csv(const std::vector<BenchmarkRow>& rows)
{
    std::ostringstream os;
    os << "scenario,T,N,method,metric,mean,sd,trials,seed\n";
    for (const auto& r : rows)
        os << csv_field(r.scenario) << ',' << r.length << ',' << r.per_process << ',' << r.method << ',' << r.metric << ','
           << format_double(r.mean) << ',' << format_double(r.sd) << ',' << r.trials << ',' << r.seed << '\n';
    return os.str();
}

} // namespace gmclust
