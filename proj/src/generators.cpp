#include "cubejoin/generators.hpp"

#include <vector>

#include "cubejoin/common.hpp"

namespace cubejoin {

namespace {

std::string node_name(int i) { return std::string(1, static_cast<char>('a' + i)); }

std::string render(const std::vector<std::pair<std::string, std::string>>& atoms,
                   const std::vector<std::pair<std::string, std::string>>& chain) {
    std::string out = "Q(count) :- ";
    bool first = true;
    for (const auto& [u, v] : atoms) {
        if (!first) out += ", ";
        first = false;
        out += "edge(" + u + "," + v + ")";
    }
    for (const auto& [u, v] : chain) out += ", " + u + "<" + v;
    return out;
}

std::string clique(int n) {
    std::vector<std::pair<std::string, std::string>> atoms;
    for (int i = 0; i + 1 < n; ++i) atoms.emplace_back(node_name(i), node_name(i + 1));
    for (int i = 0; i < n; ++i)
        for (int j = i + 2; j < n; ++j) atoms.emplace_back(node_name(i), node_name(j));
    std::vector<std::pair<std::string, std::string>> chain;
    for (int i = 0; i + 1 < n; ++i) chain.emplace_back(node_name(i), node_name(i + 1));
    return render(atoms, chain);
}

std::string cycle(int n) {
    std::vector<std::pair<std::string, std::string>> atoms;
    for (int i = 0; i + 1 < n; ++i) atoms.emplace_back(node_name(i), node_name(i + 1));
    if (n > 2) atoms.emplace_back(node_name(0), node_name(n - 1));
    std::vector<std::pair<std::string, std::string>> chain;
    for (int i = 0; i + 1 < n; ++i) chain.emplace_back(node_name(i), node_name(i + 1));
    return render(atoms, chain);
}

std::string loomis_whitney(int n) {
    std::string out = "Q(count) :- ";
    for (int atom = 0; atom < n; ++atom) {
        // Atom 1 drops a_n; atom i > 1 drops a_{i-1}.
        const int dropped = atom == 0 ? n : atom;
        if (atom) out += ", ";
        out += "edge(";
        bool first = true;
        for (int a = 1; a <= n; ++a) {
            if (a == dropped) continue;
            if (!first) out += ",";
            first = false;
            out += "a" + std::to_string(a);
        }
        out += ")";
    }
    return out;
}

}  // namespace

std::string generate_query(const std::string& kind, int n) {
    if (kind == "clique" || kind == "cycle") {
        if (n < 3 || n > 26)
            throw QueryError(kind + " size must be between 3 and 26, got " + std::to_string(n));
        return kind == "clique" ? clique(n) : cycle(n);
    }
    if (kind == "loomis-whitney") {
        if (n < 3)
            throw QueryError("loomis-whitney degree must be at least 3, got " + std::to_string(n));
        return loomis_whitney(n);
    }
    throw QueryError("unknown query kind '" + kind + "' (expected clique, cycle or loomis-whitney)");
}

}  // namespace cubejoin
