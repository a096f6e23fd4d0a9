#include "multent/json_io.hpp"

#include <fstream>
#include <sstream>

namespace multent {

std::string word_to_string(const std::vector<int>& word, int alphabet) {
    std::ostringstream os;
    if (alphabet <= 10) {
        for (int c : word) os << c;
    } else {
        for (std::size_t i = 0; i < word.size(); ++i) {
            if (i) os << ',';
            os << word[i];
        }
    }
    return os.str();
}

std::vector<int> word_from_string(const std::string& s, int alphabet) {
    std::vector<int> word;
    if (alphabet <= 10) {
        for (char c : s) {
            if (c < '0' || c > '9') throw BadInput("word '" + s + "': expected digits");
            word.push_back(c - '0');
        }
    } else {
        std::istringstream is(s);
        std::string tok;
        while (std::getline(is, tok, ',')) word.push_back(std::stoi(tok));
    }
    for (int c : word)
        if (c < 0 || c >= alphabet) throw BadInput("word '" + s + "': symbol out of range");
    return word;
}

SubshiftSpec subshift_from_json(const Json& j) {
    SubshiftSpec spec;
    if (!j.is_object()) throw BadInput("subshift json: expected an object");
    spec.name = j.value("name", std::string{});
    if (!j.contains("alphabet")) throw BadInput("subshift json: missing 'alphabet'");
    spec.alphabet = j.at("alphabet").get<int>();
    const std::string kind = j.value("kind", std::string("full"));
    if (kind == "full") {
        spec.kind = SubshiftKind::Full;
    } else if (kind == "sft") {
        spec.kind = SubshiftKind::Sft;
        if (!j.contains("adjacency")) throw BadInput("subshift json: sft needs 'adjacency'");
        for (const auto& row : j.at("adjacency")) {
            std::vector<std::uint8_t> r;
            for (const auto& v : row) r.push_back(std::uint8_t(v.get<int>()));
            spec.adjacency.push_back(std::move(r));
        }
    } else if (kind == "forbidden_words") {
        spec.kind = SubshiftKind::ForbiddenWords;
        if (!j.contains("forbidden")) throw BadInput("subshift json: needs 'forbidden'");
        for (const auto& w : j.at("forbidden"))
            spec.forbidden.push_back(word_from_string(w.get<std::string>(), spec.alphabet));
    } else {
        throw BadInput("subshift json: unknown kind '" + kind + "'");
    }
    validate(spec);
    return spec;
}

Json subshift_to_json(const SubshiftSpec& spec) {
    Json j;
    j["name"] = spec.name;
    j["alphabet"] = spec.alphabet;
    switch (spec.kind) {
    case SubshiftKind::Full:
        j["kind"] = "full";
        break;
    case SubshiftKind::Sft: {
        j["kind"] = "sft";
        Json rows = Json::array();
        for (const auto& row : spec.adjacency) {
            Json r = Json::array();
            for (auto v : row) r.push_back(int(v));
            rows.push_back(std::move(r));
        }
        j["adjacency"] = std::move(rows);
        break;
    }
    case SubshiftKind::ForbiddenWords: {
        j["kind"] = "forbidden_words";
        Json words = Json::array();
        for (const auto& w : spec.forbidden) words.push_back(word_to_string(w, spec.alphabet));
        j["forbidden"] = std::move(words);
        break;
    }
    }
    return j;
}

SubshiftSpec load_subshift(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw BadInput("cannot open subshift file '" + path + "'");
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw BadInput("cannot parse '" + path + "': " + e.what());
    }
    return subshift_from_json(j);
}

} // namespace multent
