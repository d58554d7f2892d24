#pragma once

// On-disk character-table cache: JSON Lines, one header record followed by
// one record per row lambda (canonical order) whose values run across
// columns in canonical mu order. Values are decimal strings so consumers
// never hit integer-width limits. Writes go through a temp file + rename.

#include <gmpxx.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "sncharlab/character.hpp"
#include "sncharlab/errors.hpp"

namespace sncharlab {

struct CacheHeader {
    std::string format = "sgct-cache";
    int version = 1;
    int n = 0;
    std::optional<int> modulus;
    std::string order = "revlex";
};

inline std::string cache_file_name(int n, std::optional<int> modulus) {
    std::ostringstream name;
    name << "table-n" << n << "-" << (modulus ? "mod" + std::to_string(*modulus) : "exact")
         << ".jsonl";
    return name.str();
}

inline void write_table_cache(const std::string& path, const CharTable& table) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw cache_error("cannot open cache file for writing: " + tmp.string());
        nlohmann::json header;
        header["format"] = "sgct-cache";
        header["version"] = 1;
        header["n"] = table.n;
        if (table.modulus)
            header["modulus"] = *table.modulus;
        else
            header["modulus"] = nullptr;
        header["order"] = "revlex";
        out << header.dump() << "\n";
        for (std::size_t li = 0; li < table.index.size(); ++li) {
            nlohmann::json row;
            row["lambda"] = table.index[li].parts();
            auto values = nlohmann::json::array();
            for (std::size_t mi = 0; mi < table.columns.size(); ++mi)
                values.push_back(table.value(li, mi).get_str());
            row["values"] = std::move(values);
            out << row.dump() << "\n";
        }
        if (!out) throw cache_error("write failed: " + tmp.string());
    }
    fs::rename(tmp, target);
}

// Loads a cached table. `want_modulus` must match the file header exactly:
// a residue cache is never reused for an exact request or for a different
// modulus.
inline CharTable read_table_cache(const std::string& path, std::optional<int> want_modulus) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw cache_error("cannot open cache file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw cache_error("empty cache file: " + path);

    nlohmann::json header = nlohmann::json::parse(line, nullptr, false);
    if (header.is_discarded() || !header.is_object())
        throw cache_error("malformed cache header: " + path);
    if (header.value("format", "") != "sgct-cache")
        throw cache_error("not a sgct-cache file: " + path);
    if (header.value("version", -1) != 1)
        throw cache_error("unsupported cache version: " + path);
    if (header.value("order", "") != "revlex")
        throw cache_error("unsupported partition order: " + path);

    CacheHeader h;
    h.n = header.at("n").get<int>();
    if (!header.at("modulus").is_null()) h.modulus = header.at("modulus").get<int>();
    if (h.modulus != want_modulus)
        throw cache_error("cache modulus mismatch (no silent lossy reuse): " + path);

    CharTable table;
    table.n = h.n;
    table.modulus = h.modulus;
    table.index = enumerate_partitions(h.n);
    const std::size_t count = table.index.size();
    table.columns.resize(count);
    for (std::size_t mi = 0; mi < count; ++mi) {
        table.columns[mi].n = h.n;
        table.columns[mi].mu = table.index[mi];
        table.columns[mi].modulus = h.modulus;
        table.columns[mi].values.resize(count);
    }

    for (std::size_t li = 0; li < count; ++li) {
        if (!std::getline(in, line)) throw cache_error("truncated cache file: " + path);
        nlohmann::json row = nlohmann::json::parse(line, nullptr, false);
        if (row.is_discarded() || !row.is_object())
            throw cache_error("malformed cache row: " + path);
        const Partition lambda(row.at("lambda").get<std::vector<int>>());
        if (!(lambda == table.index[li]))
            throw cache_error("cache row out of canonical order: " + path);
        const auto& values = row.at("values");
        if (values.size() != count) throw cache_error("cache row has wrong width: " + path);
        for (std::size_t mi = 0; mi < count; ++mi)
            table.columns[mi].values[li] = mpz_class(values[mi].get<std::string>());
    }
    return table;
}

}  // namespace sncharlab
