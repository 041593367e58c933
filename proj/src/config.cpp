#include "nisac/config.hpp"

#include "nisac/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string_view>

namespace nisac {

namespace {

using nlohmann::json;

void only_keys(const json& obj, std::string_view where, std::initializer_list<std::string_view> allowed) {
    if (!obj.is_object()) {
        throw ConfigError(std::string(where) + ": expected an object");
    }
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (std::string_view a : allowed) {
            known = known || key == a;
        }
        if (!known) {
            throw ConfigError(std::string(where) + ": unknown key '" + key + "'");
        }
    }
}

double number(const json& v, const std::string& name) {
    if (!v.is_number()) {
        throw ConfigError(name + ": expected a number");
    }
    return v.get<double>();
}

int integer(const json& v, const std::string& name) {
    if (!v.is_number_integer()) {
        throw ConfigError(name + ": expected an integer");
    }
    return v.get<int>();
}

void read(const json& obj, const char* key, double& out, const std::string& prefix = {}) {
    if (obj.contains(key)) {
        out = number(obj.at(key), prefix + key);
    }
}

void read(const json& obj, const char* key, int& out, const std::string& prefix = {}) {
    if (obj.contains(key)) {
        out = integer(obj.at(key), prefix + key);
    }
}

Position position(const json& v, const std::string& name) {
    if (!v.is_array() || v.size() != 3) {
        throw ConfigError(name + ": expected [x, y, z]");
    }
    return {number(v[0], name), number(v[1], name), number(v[2], name)};
}

UraShape shape(const json& v, const std::string& name) {
    if (!v.is_array() || v.size() != 2) {
        throw ConfigError(name + ": expected [n_y, n_z]");
    }
    return {integer(v[0], name), integer(v[1], name)};
}

LinkGeometry link(const json& v, const std::string& name) {
    only_keys(v, name, {"distance", "elevation", "azimuth"});
    for (const char* k : {"distance", "elevation", "azimuth"}) {
        if (!v.contains(k)) {
            throw ConfigError(name + ": missing '" + k + "'");
        }
    }
    return make_link(number(v.at("distance"), name + ".distance"),
                     number(v.at("elevation"), name + ".elevation"),
                     number(v.at("azimuth"), name + ".azimuth"));
}

}  // namespace

SystemConfig parse_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("invalid JSON: ") + e.what());
    }
    only_keys(doc, "config",
              {"snr_db", "p_t", "t_slots", "zeta", "bits", "sigma_x2", "monte_carlo_draws",
               "design_draws", "td_split", "arrays", "ce", "path_loss", "positions", "links",
               "distances", "phase_indices"});

    SystemConfig cfg = default_system();
    read(doc, "snr_db", cfg.snr_db);
    read(doc, "p_t", cfg.p_t);
    read(doc, "t_slots", cfg.slots);
    read(doc, "zeta", cfg.zeta);
    read(doc, "bits", cfg.bits);
    read(doc, "sigma_x2", cfg.sigma_x2);
    read(doc, "monte_carlo_draws", cfg.monte_carlo_draws);
    read(doc, "design_draws", cfg.design_draws);
    read(doc, "td_split", cfg.td_split);

    if (doc.contains("arrays")) {
        const json& a = doc.at("arrays");
        only_keys(a, "arrays", {"n_t", "irs", "user"});
        read(a, "n_t", cfg.layout.n_t, "arrays.");
        if (a.contains("irs")) {
            cfg.layout.irs = shape(a.at("irs"), "arrays.irs");
        }
        if (a.contains("user")) {
            cfg.layout.user = shape(a.at("user"), "arrays.user");
        }
    }
    if (doc.contains("ce")) {
        const json& c = doc.at("ce");
        only_keys(c, "ce", {"candidates", "elite", "threshold", "max_iterations"});
        read(c, "candidates", cfg.ce.candidates, "ce.");
        read(c, "elite", cfg.ce.elite, "ce.");
        read(c, "threshold", cfg.ce.threshold, "ce.");
        read(c, "max_iterations", cfg.ce.max_iterations, "ce.");
    }
    if (doc.contains("path_loss")) {
        const json& p = doc.at("path_loss");
        only_keys(p, "path_loss", {"reference_db", "exponent_b2i", "exponent_i2u"});
        read(p, "reference_db", cfg.path_loss.reference_loss_db, "path_loss.");
        read(p, "exponent_b2i", cfg.path_loss.exponent_b2i, "path_loss.");
        read(p, "exponent_i2u", cfg.path_loss.exponent_i2u, "path_loss.");
    }

    if (doc.contains("positions") && doc.contains("links")) {
        throw ConfigError("config: 'positions' and 'links' are mutually exclusive");
    }
    if (doc.contains("positions")) {
        const json& p = doc.at("positions");
        only_keys(p, "positions", {"bs", "user", "sub_irs"});
        Placement placement = default_placement();
        if (p.contains("bs")) {
            placement.bs = position(p.at("bs"), "positions.bs");
        }
        if (p.contains("user")) {
            placement.user = position(p.at("user"), "positions.user");
        }
        if (p.contains("sub_irs")) {
            const json& s = p.at("sub_irs");
            if (!s.is_array() || s.size() != 2) {
                throw ConfigError("positions.sub_irs: expected two positions");
            }
            placement.sub_irs = {position(s[0], "positions.sub_irs[0]"),
                                 position(s[1], "positions.sub_irs[1]")};
        }
        try {
            apply_placement(cfg, placement);
        } catch (const std::domain_error& e) {
            throw ConfigError(std::string("positions: ") + e.what());
        }
    }
    if (doc.contains("links")) {
        const json& l = doc.at("links");
        if (!l.is_array() || l.empty() || l.size() > 2) {
            throw ConfigError("links: expected one or two block entries");
        }
        for (std::size_t i = 0; i < l.size(); ++i) {
            const std::string name = "links[" + std::to_string(i) + "]";
            only_keys(l[i], name, {"i2u", "b2i", "bs_departure_elevation"});
            if (!l[i].contains("i2u") || !l[i].contains("b2i") ||
                !l[i].contains("bs_departure_elevation")) {
                throw ConfigError(name + ": needs i2u, b2i and bs_departure_elevation");
            }
            cfg.blocks[i].irs_to_user = link(l[i].at("i2u"), name + ".i2u");
            cfg.blocks[i].bs_to_irs = link(l[i].at("b2i"), name + ".b2i");
            cfg.blocks[i].bs_departure_elevation =
                number(l[i].at("bs_departure_elevation"), name + ".bs_departure_elevation");
        }
        if (l.size() == 1) {
            cfg.blocks[1] = cfg.blocks[0];
        }
        cfg.placement.reset();
    }
    if (doc.contains("distances")) {
        const json& d = doc.at("distances");
        only_keys(d, "distances", {"b2i", "i2u"});
        for (BlockGeometry& b : cfg.blocks) {
            read(d, "b2i", b.bs_to_irs.distance, "distances.");
            read(d, "i2u", b.irs_to_user.distance, "distances.");
        }
    }
    if (doc.contains("phase_indices")) {
        const json& p = doc.at("phase_indices");
        if (!p.is_array()) {
            throw ConfigError("phase_indices: expected an array");
        }
        std::vector<int> indices;
        for (const json& v : p) {
            indices.push_back(integer(v, "phase_indices"));
        }
        cfg.phase_indices = std::move(indices);
    }
    validate(cfg);
    return cfg;
}

SystemConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    std::ostringstream text;
    text << in.rdbuf();
    try {
        return parse_config(text.str());
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

}  // namespace nisac
