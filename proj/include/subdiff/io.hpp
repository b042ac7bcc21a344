#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace subdiff {

// Full-precision decimal form: 17 significant digits round-trip a double
// exactly, so equal values always print as equal bytes.
inline std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Binary mode keeps line endings at LF on every platform; byte-identical
// output is part of the reproducibility contract.
inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("write_text_file: cannot open " + path);
    out.write(content.data(), (std::streamsize)content.size());
    if (!out)
        throw std::runtime_error("write_text_file: short write to " + path);
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("read_text_file: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Record of one CLI run: the subcommand, the literal flag values, the seed,
// and every artifact written. The stored argv line is sufficient to re-run
// the command and reproduce the artifacts byte for byte.
struct RunManifest {
    std::string subcommand;
    std::map<std::string, std::string> parameters;
    std::uint64_t seed = 0;
    std::vector<std::string> artifact_paths;
    std::string argv_line;

    std::string to_string() const {
        std::string s;
        s += "subcommand: " + subcommand + "\n";
        s += "seed: " + std::to_string(seed) + "\n";
        s += "argv: " + argv_line + "\n";
        for (const auto& [key, value] : parameters)
            s += "param." + key + ": " + value + "\n";
        for (const auto& path : artifact_paths)
            s += "artifact: " + path + "\n";
        return s;
    }

    static RunManifest parse(const std::string& text) {
        RunManifest m;
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r')
                line.pop_back();
            const auto sep = line.find(": ");
            if (sep == std::string::npos)
                continue;
            const std::string key = line.substr(0, sep);
            const std::string value = line.substr(sep + 2);
            if (key == "subcommand")
                m.subcommand = value;
            else if (key == "seed")
                m.seed = std::stoull(value);
            else if (key == "argv")
                m.argv_line = value;
            else if (key == "artifact")
                m.artifact_paths.push_back(value);
            else if (key.rfind("param.", 0) == 0)
                m.parameters[key.substr(6)] = value;
        }
        return m;
    }
};

inline void write_manifest(const std::string& path, const RunManifest& m) {
    write_text_file(path, m.to_string());
}

inline RunManifest read_manifest(const std::string& path) {
    return RunManifest::parse(read_text_file(path));
}

} // namespace subdiff
