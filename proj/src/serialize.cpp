#include "nbagg/serialize.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace nbagg {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void malformed(const std::string& message) {
    throw ValidationError(IssueKind::Malformed, message);
}

std::vector<double> number_array(const json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) malformed(std::string("missing key \"") + key + "\"");
    if (!it->is_array()) malformed(std::string("\"") + key + "\" must be an array of numbers");
    std::vector<double> out;
    out.reserve(it->size());
    for (std::size_t i = 0; i < it->size(); ++i) {
        const json& v = (*it)[i];
        if (!v.is_number()) {
            std::ostringstream os;
            os << key << "[" << i << "] is not a number";
            malformed(os.str());
        }
        out.push_back(v.get<double>());
    }
    return out;
}

json rounded(double v) { return round_significant(v, 12); }

json rounded(const std::optional<double>& v) {
    return v ? rounded(*v) : json(nullptr);
}

}  // namespace

PanelInput parse_panel_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        malformed(std::string("panel is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) malformed("panel must be a JSON object");
    PanelInput raw;
    raw.psi = number_array(doc, "psi");
    raw.eta = number_array(doc, "eta");
    if (auto it = doc.find("p_y"); it != doc.end()) {
        if (!it->is_number()) malformed("\"p_y\" must be a number");
        raw.p_y = it->get<double>();
    }
    return raw;
}

PanelInput load_panel_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) malformed("cannot open panel file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_panel_json(buf.str());
}

std::string panel_to_json(const ExpertPanel& panel, int indent) {
    json doc = {{"psi", panel.psi()}, {"eta", panel.eta()}, {"p_y", panel.p_y()}};
    return doc.dump(indent);
}

std::string report_to_json(const BoundsReport& r, int indent) {
    json pi = json::array();
    for (double v : r.pi.pi) pi.push_back(rounded(v));
    json doc = {
        {"n", r.n},
        {"pi", pi},
        {"upper_thm2", rounded(r.upper_thm2)},
        {"lower_thm3", rounded(r.lower_thm3)},
        {"lower_thm4", rounded(r.lower_thm4)},
        {"bk_lower", rounded(r.bk_lower)},
        {"bk_upper", rounded(r.bk_upper)},
        {"manino_lower", rounded(r.manino_lower)},
        {"manino_upper", rounded(r.manino_upper)},
        {"hellinger_lower", rounded(r.hellinger_lower)},
        {"hellinger_upper", rounded(r.hellinger_upper)},
        {"bhattacharyya", rounded(r.bhattacharyya)},
        {"exact", rounded(r.exact)},
    };
    return doc.dump(indent);
}

std::string format_number(double value, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, value);
    return buf;
}

double round_significant(double value, int digits) {
    return std::strtod(format_number(value, digits).c_str(), nullptr);
}

}  // namespace nbagg
