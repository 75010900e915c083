#include "nilrep/presets.hpp"

#include <nlohmann/json.hpp>

namespace nilrep {

PcPresentationPtr cyclic_group(long n) {
    if (n < 2) throw ValidationError("cyclic group needs n >= 2");
    return std::make_shared<PcPresentation>(std::vector<long>{n},
                                            std::map<size_t, GroupElement>{},
                                            std::map<std::pair<size_t, size_t>, GroupElement>{},
                                            "cyclic:" + std::to_string(n));
}

PcPresentationPtr heisenberg_mod(long n) {
    if (n < 2 || n > 8) throw ValidationError("heis_mod preset needs 2 <= n <= 8");
    // x = g1, y = g2, z = g3; x y x^-1 = y z, z central, all orders n
    std::map<std::pair<size_t, size_t>, GroupElement> conjs;
    conjs[{0, 1}] = GroupElement{0, 1, 1};
    return std::make_shared<PcPresentation>(std::vector<long>{n, n, n},
                                            std::map<size_t, GroupElement>{}, conjs,
                                            "heis_mod:" + std::to_string(n));
}

PcPresentationPtr preset_group(const std::string& name) {
    auto colon = name.find(':');
    std::string kind = name.substr(0, colon == std::string::npos ? name.size() : colon);
    if (kind == "cyclic") {
        long n = std::stol(name.substr(colon + 1));
        return cyclic_group(n);
    }
    if (kind == "heis_mod") {
        long n = std::stol(name.substr(colon + 1));
        return heisenberg_mod(n);
    }
    if (kind == "product") {
        std::string rest = name.substr(colon + 1);
        std::vector<std::string> parts;
        size_t pos = 0;
        while (pos < rest.size()) {
            auto comma = rest.find(',', pos);
            if (comma == std::string::npos) comma = rest.size();
            parts.push_back(rest.substr(pos, comma - pos));
            pos = comma + 1;
        }
        if (parts.size() < 2) throw ValidationError("product preset needs >= 2 factors");
        PcPresentationPtr acc = preset_group(parts[0]);
        for (size_t i = 1; i < parts.size(); ++i)
            acc = direct_product(acc, preset_group(parts[i]));
        return acc;
    }
    throw ValidationError("unknown preset: " + name);
}

std::vector<std::string> preset_names() {
    std::vector<std::string> names;
    for (long n = 2; n <= 16; ++n) names.push_back("cyclic:" + std::to_string(n));
    for (long n = 2; n <= 8; ++n) names.push_back("heis_mod:" + std::to_string(n));
    names.push_back("product:<A>,<B>,...");
    return names;
}

namespace {

GroupElement word_from_json(const nlohmann::json& j, size_t ngens) {
    GroupElement w(ngens, 0);
    for (const auto& pair : j) {
        long gen = pair.at(0).get<long>();
        long exp = pair.at(1).get<long>();
        if (gen < 1 || static_cast<size_t>(gen) > ngens)
            throw ValidationError("generator index out of range in word");
        w[static_cast<size_t>(gen - 1)] += exp;
    }
    return w;
}

}  // namespace

PcPresentationPtr presentation_from_json(const nlohmann::json& j) {
    size_t ngens = j.at("ngens").get<size_t>();
    std::vector<long> orders = j.at("orders").get<std::vector<long>>();
    if (orders.size() != ngens) throw ValidationError("orders length != ngens");
    std::map<size_t, GroupElement> powers;
    if (j.contains("powers"))
        for (auto it = j.at("powers").begin(); it != j.at("powers").end(); ++it) {
            size_t i = static_cast<size_t>(std::stol(it.key()));
            if (i < 1 || i > ngens) throw ValidationError("power relation index out of range");
            powers[i - 1] = word_from_json(it.value(), ngens);
        }
    std::map<std::pair<size_t, size_t>, GroupElement> conjs;
    if (j.contains("conjugates"))
        for (auto it = j.at("conjugates").begin(); it != j.at("conjugates").end(); ++it) {
            auto comma = it.key().find(',');
            if (comma == std::string::npos)
                throw ValidationError("conjugate key must be 'i,j'");
            size_t i = static_cast<size_t>(std::stol(it.key().substr(0, comma)));
            size_t jdx = static_cast<size_t>(std::stol(it.key().substr(comma + 1)));
            if (i < 1 || jdx <= i || jdx > ngens)
                throw ValidationError("conjugate key out of range");
            conjs[{i - 1, jdx - 1}] = word_from_json(it.value(), ngens);
        }
    auto p = std::make_shared<PcPresentation>(orders, powers, conjs, "loaded");
    p->check_consistency();
    return p;
}

nlohmann::json presentation_to_json(const PcPresentation& p) {
    nlohmann::json j;
    j["ngens"] = p.ngens();
    j["orders"] = p.relative_orders();
    nlohmann::json powers = nlohmann::json::object();
    nlohmann::json conjs = nlohmann::json::object();
    auto word_json = [](const GroupElement& w) {
        nlohmann::json arr = nlohmann::json::array();
        for (size_t k = 0; k < w.size(); ++k)
            if (w[k] != 0) arr.push_back({k + 1, w[k]});
        return arr;
    };
    for (size_t i = 0; i < p.ngens(); ++i) {
        if (!p.is_identity(p.power_word(i)))
            powers[std::to_string(i + 1)] = word_json(p.power_word(i));
        for (size_t jdx = i + 1; jdx < p.ngens(); ++jdx) {
            GroupElement plain(p.ngens(), 0);
            plain[jdx] = 1;
            if (p.conj_word(i, jdx) != plain)
                conjs[std::to_string(i + 1) + "," + std::to_string(jdx + 1)] =
                    word_json(p.conj_word(i, jdx));
        }
    }
    j["powers"] = powers;
    j["conjugates"] = conjs;
    return j;
}

}  // namespace nilrep
