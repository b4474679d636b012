#include "htriv/errors.hpp"
#include "htriv/fan.hpp"

#include <json.hpp>

namespace htriv {

namespace {

using nlohmann::json;

long long integer_field(const json& v, const std::string& what) {
    if (v.is_number_float()) throw ParseError(what + " must be an integer, got a float");
    if (!v.is_number_integer()) throw ParseError(what + " must be an integer");
    return v.get<long long>();
}

const json& required(const json& doc, const char* key) {
    auto it = doc.find(key);
    if (it == doc.end()) throw ParseError(std::string("missing field \"") + key + "\"");
    return *it;
}

}  // namespace

StackyFan load_fan(std::string_view text, const ValidationOptions& options) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("fan file must be a JSON object");

    long long rank = integer_field(required(doc, "rank"), "rank");
    if (rank <= 0) throw ParseError("rank must be positive");

    const json& rays_j = required(doc, "rays");
    if (!rays_j.is_array()) throw ParseError("\"rays\" must be an array");
    std::vector<IntVector> rays;
    for (std::size_t i = 0; i < rays_j.size(); ++i) {
        const json& r = rays_j[i];
        if (!r.is_array()) throw ParseError("ray " + std::to_string(i) + " must be an array");
        IntVector v;
        for (const auto& x : r) v.emplace_back(static_cast<long>(integer_field(x, "ray entry")));
        rays.push_back(std::move(v));
    }

    const json& cones_j = required(doc, "max_cones");
    if (!cones_j.is_array()) throw ParseError("\"max_cones\" must be an array");
    std::vector<std::vector<std::size_t>> cones;
    for (std::size_t k = 0; k < cones_j.size(); ++k) {
        const json& c = cones_j[k];
        if (!c.is_array()) throw ParseError("cone " + std::to_string(k) + " must be an array");
        std::vector<std::size_t> idx;
        for (const auto& x : c) {
            long long i = integer_field(x, "cone index");
            if (i < 0) throw ParseError("cone index must be non-negative");
            idx.push_back(static_cast<std::size_t>(i));
        }
        cones.push_back(std::move(idx));
    }
    return StackyFan(static_cast<std::size_t>(rank), std::move(rays), std::move(cones), options);
}

}  // namespace htriv
