#pragma once

#include <algorithm>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cryptoscan/core.hpp"
#include "cryptoscan/detail/util.hpp"

namespace cryptoscan {

// ---------------------------------------------------------------------------
// Relevance configuration
// ---------------------------------------------------------------------------

/// Which import/package prefixes mark a file as crypto-relevant, per language.
struct RelevanceConfig {
    std::map<Language, std::vector<std::string>> markers_by_language;
    std::size_t max_unit_bytes = 256 * 1024;

    static RelevanceConfig defaults();

    const std::vector<std::string> &markers_for(Language l) const {
        static const std::vector<std::string> none;
        auto it = markers_by_language.find(l);
        return it == markers_by_language.end() ? none : it->second;
    }
};

inline const char *default_python_crypto_packages_text() {
    // Keep byte-identical with data/python_crypto_packages.txt (sync-checked).
    return
        "# Python packages whose import marks a file as crypto-relevant.\n"
        "hashlib\n"
        "hmac\n"
        "secrets\n"
        "ssl\n"
        "crypt\n"
        "cryptography\n"
        "Crypto\n"
        "Cryptodome\n"
        "nacl\n"
        "OpenSSL\n"
        "paramiko\n"
        "jwt\n"
        "passlib\n"
        "bcrypt\n"
        "scrypt\n"
        "ecdsa\n"
        "rsa\n"
        "pyaes\n"
        "M2Crypto\n"
        "gnupg\n";
}

inline std::vector<std::string> parse_marker_list(std::string_view text) {
    std::vector<std::string> out;
    for (const auto &raw : detail::split_lines(text)) {
        auto line = detail::trim(raw);
        if (line.empty() || line.front() == '#') continue;
        out.emplace_back(line);
    }
    return out;
}

inline RelevanceConfig RelevanceConfig::defaults() {
    RelevanceConfig cfg;
    cfg.markers_by_language[Language::Java] = {"javax.crypto", "java.security"};
    cfg.markers_by_language[Language::Python] =
        parse_marker_list(default_python_crypto_packages_text());
    return cfg;
}

inline Language language_from_extension(const std::filesystem::path &p) {
    auto ext = detail::to_lower(p.extension().string());
    if (ext == ".java") return Language::Java;
    if (ext == ".py") return Language::Python;
    return Language::Other;
}

// ---------------------------------------------------------------------------
// Import-anchored relevance matching
// ---------------------------------------------------------------------------

namespace detail_ingest {

/// True when `module` equals `prefix` or extends it at a '.' or '/' boundary.
inline bool module_has_prefix(std::string_view module, std::string_view prefix) {
    if (!cryptoscan::detail::starts_with(module, prefix)) return false;
    if (module.size() == prefix.size()) return true;
    char next = module[prefix.size()];
    return next == '.' || next == '/' || (!prefix.empty() && prefix.back() == '/');
}

/// Imported module paths referenced by one source line, by language-specific
/// import forms. Matching is line-anchored: only genuine import statements
/// count, not arbitrary substrings.
inline std::vector<std::string> imported_modules(std::string_view raw, Language lang) {
    namespace du = cryptoscan::detail;
    std::vector<std::string> mods;
    auto line = du::trim(raw);
    if (line.empty()) return mods;

    auto take_until = [](std::string_view s, std::string_view stops) {
        std::size_t i = 0;
        while (i < s.size() && stops.find(s[i]) == std::string_view::npos) ++i;
        return std::string(du::trim(s.substr(0, i)));
    };

    bool java_forms = lang == Language::Java || lang == Language::Other;
    bool python_forms = lang == Language::Python || lang == Language::Other;

    if (java_forms && du::starts_with(line, "import ")) {
        auto rest = du::trim(line.substr(7));
        if (du::starts_with(rest, "static ")) rest = du::trim(rest.substr(7));
        if (!rest.empty() && rest.front() != '"' && rest.front() != '\'') {
            auto mod = take_until(rest, "; \t");
            if (!mod.empty()) {
                if (mod.size() >= 2 && mod.substr(mod.size() - 2) == ".*")
                    mod = mod.substr(0, mod.size() - 2);
                mods.push_back(mod);
            }
        }
    }
    if (python_forms) {
        if (du::starts_with(line, "import ")) {
            auto rest = line.substr(7);
            // "import a.b as x, c.d" -> {a.b, c.d}
            std::size_t start = 0;
            while (start <= rest.size()) {
                auto comma = rest.find(',', start);
                auto piece = du::trim(comma == std::string_view::npos
                                          ? rest.substr(start)
                                          : rest.substr(start, comma - start));
                if (!piece.empty() && piece.front() != '"' && piece.front() != '\'') {
                    auto mod = take_until(piece, " \t;");
                    if (!mod.empty()) mods.push_back(mod);
                }
                if (comma == std::string_view::npos) break;
                start = comma + 1;
            }
        } else if (du::starts_with(line, "from ")) {
            auto mod = take_until(du::trim(line.substr(5)), " \t");
            if (!mod.empty()) mods.push_back(mod);
        }
    }
    if (lang == Language::Other) {
        if (du::starts_with(line, "#include")) {
            auto rest = du::trim(line.substr(8));
            if (rest.size() >= 2 && (rest.front() == '<' || rest.front() == '"')) {
                char close = rest.front() == '<' ? '>' : '"';
                auto end = rest.find(close, 1);
                if (end != std::string_view::npos)
                    mods.emplace_back(du::trim(rest.substr(1, end - 1)));
            }
        }
        // quoted import forms: go `import "crypto/md5"`, js `require("crypto")`
        for (std::string_view kw : {std::string_view("import "), std::string_view("require(")}) {
            auto pos = line.find(kw);
            if (pos != 0 && kw == "import ") continue;
            if (pos == std::string_view::npos) continue;
            auto rest = line.substr(pos + kw.size());
            auto q = rest.find_first_of("\"'");
            if (q == std::string_view::npos) continue;
            char quote = rest[q];
            auto end = rest.find(quote, q + 1);
            if (end != std::string_view::npos)
                mods.emplace_back(du::trim(rest.substr(q + 1, end - q - 1)));
        }
    }
    return mods;
}

}  // namespace detail_ingest

struct RelevanceResult {
    bool relevant = false;
    std::vector<std::string> markers;  // matched prefixes, deduplicated, sorted
};

/// Line-anchored import matching against the configured prefixes.
inline RelevanceResult is_crypto_relevant(const SourceUnit &unit, const RelevanceConfig &cfg) {
    RelevanceResult res;
    const auto &prefixes = cfg.markers_for(unit.language);
    if (prefixes.empty()) return res;
    for (const auto &line : detail::split_lines(unit.content)) {
        for (const auto &mod : detail_ingest::imported_modules(line, unit.language)) {
            for (const auto &prefix : prefixes) {
                if (detail_ingest::module_has_prefix(mod, prefix)) res.markers.push_back(prefix);
            }
        }
    }
    std::sort(res.markers.begin(), res.markers.end());
    res.markers.erase(std::unique(res.markers.begin(), res.markers.end()), res.markers.end());
    res.relevant = !res.markers.empty();
    return res;
}

// ---------------------------------------------------------------------------
// Tree scanning
// ---------------------------------------------------------------------------

struct ScanDiagnostic {
    std::string path;
    std::string reason;
};

struct ScanTreeResult {
    std::vector<SourceUnit> units;  // stable order by path
    std::vector<ScanDiagnostic> diagnostics;
};

/// Walk `root` and keep the crypto-relevant source files. Unreadable files are
/// skipped with a diagnostic; an unreadable root is an error.
inline ScanTreeResult scan_tree(const std::filesystem::path &root, const RelevanceConfig &cfg) {
    namespace fs = std::filesystem;
    if (!fs::exists(root) || !fs::is_directory(root))
        throw std::runtime_error("scan root not readable: " + root.string());

    ScanTreeResult result;
    std::vector<fs::path> files;
    fs::recursive_directory_iterator it(root, fs::directory_options::skip_permission_denied);
    for (const auto &entry : it) {
        if (entry.is_directory() && entry.path().filename() == ".git") {
            it.disable_recursion_pending();
            continue;
        }
        if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());

    for (const auto &file : files) {
        auto rel = fs::relative(file, root).generic_string();
        std::error_code ec;
        auto size = fs::file_size(file, ec);
        if (ec) {
            result.diagnostics.push_back({rel, "unreadable: " + ec.message()});
            continue;
        }
        if (size > cfg.max_unit_bytes) {
            result.diagnostics.push_back(
                {rel, "skipped: exceeds max unit size (" + std::to_string(size) + " bytes)"});
            continue;
        }
        std::string content;
        try {
            content = detail::read_file(file);
        } catch (const std::exception &e) {
            result.diagnostics.push_back({rel, std::string("unreadable: ") + e.what()});
            continue;
        }
        auto lang = language_from_extension(file);
        auto unit = make_source_unit(rel, lang, std::move(content));
        auto rr = is_crypto_relevant(unit, cfg);
        if (!rr.relevant) continue;
        unit.crypto_markers = std::move(rr.markers);
        result.units.push_back(std::move(unit));
    }
    return result;
}

// ---------------------------------------------------------------------------
// Repository classification and ranking
// ---------------------------------------------------------------------------

enum class ExclusionFlag { Tutorial, LocalOnly, ExploitToolkit, Experimental };

inline std::string_view exclusion_tag(ExclusionFlag f) {
    switch (f) {
        case ExclusionFlag::Tutorial: return "Tutorial";
        case ExclusionFlag::LocalOnly: return "LocalOnly";
        case ExclusionFlag::ExploitToolkit: return "ExploitToolkit";
        case ExclusionFlag::Experimental: return "Experimental";
    }
    return "Tutorial";
}

inline std::optional<ExclusionFlag> exclusion_from_tag(std::string_view tag) {
    for (auto f : {ExclusionFlag::Tutorial, ExclusionFlag::LocalOnly,
                   ExclusionFlag::ExploitToolkit, ExclusionFlag::Experimental})
        if (tag == exclusion_tag(f)) return f;
    return std::nullopt;
}

struct RepoMeta {
    std::string name;
    long star_count = 0;
    std::vector<ExclusionFlag> exclusion_flags;
};

/// Keyword heuristics per exclusion class plus a manual override list.
struct ExclusionPolicy {
    std::map<ExclusionFlag, std::vector<std::string>> keywords;  // lowercase
    std::map<std::string, bool> overrides;                       // name -> exclude?

    static ExclusionPolicy defaults();

    /// Policy file: `<FlagTag>\t<keyword>` lines. Override file: `<repo>\t<Exclude|Include>`.
    static ExclusionPolicy parse(std::string_view policy_text, std::string_view override_text = {});
};

inline const char *default_exclusion_policy_text() {
    // Keep byte-identical with data/exclusion_policy.tsv (sync-checked).
    return
        "# Repository exclusion heuristics: <FlagTag>\\t<keyword>\n"
        "Tutorial\ttutorial\n"
        "Tutorial\ttextbook\n"
        "Tutorial\tlearning course\n"
        "Tutorial\tcode samples\n"
        "Tutorial\texamples for the book\n"
        "LocalOnly\tdo not use in production\n"
        "LocalOnly\tnot for production\n"
        "LocalOnly\tnot production ready\n"
        "LocalOnly\tlocal development only\n"
        "ExploitToolkit\texploit\n"
        "ExploitToolkit\toffensive security\n"
        "ExploitToolkit\tpentest\n"
        "ExploitToolkit\tpayload generator\n"
        "Experimental\texperimental project\n"
        "Experimental\tproof of concept\n"
        "Experimental\ttoy project\n"
        "Experimental\tsocial coding experiment\n";
}

inline ExclusionPolicy ExclusionPolicy::parse(std::string_view policy_text,
                                              std::string_view override_text) {
    ExclusionPolicy p;
    for (const auto &raw : detail::split_lines(policy_text)) {
        auto line = detail::trim(raw);
        if (line.empty() || line.front() == '#') continue;
        auto tab = line.find('\t');
        if (tab == std::string_view::npos)
            throw std::runtime_error("policy line missing tab: " + std::string(line));
        auto flag = exclusion_from_tag(detail::trim(line.substr(0, tab)));
        if (!flag) throw std::runtime_error("unknown exclusion tag: " + std::string(line));
        p.keywords[*flag].push_back(detail::to_lower(detail::trim(line.substr(tab + 1))));
    }
    for (const auto &raw : detail::split_lines(override_text)) {
        auto line = detail::trim(raw);
        if (line.empty() || line.front() == '#') continue;
        auto tab = line.find('\t');
        if (tab == std::string_view::npos)
            throw std::runtime_error("override line missing tab: " + std::string(line));
        auto verdict = detail::trim(line.substr(tab + 1));
        if (verdict != "Exclude" && verdict != "Include")
            throw std::runtime_error("override must be Exclude or Include: " + std::string(line));
        p.overrides[std::string(detail::trim(line.substr(0, tab)))] = verdict == "Exclude";
    }
    return p;
}

inline ExclusionPolicy ExclusionPolicy::defaults() {
    return parse(default_exclusion_policy_text());
}

/// Apply keyword heuristics over repo name + README text, setting flags.
inline std::vector<ExclusionFlag> exclusion_heuristics(const std::string &name,
                                                       const std::string &readme_text,
                                                       const ExclusionPolicy &policy) {
    std::vector<ExclusionFlag> flags;
    auto hay = detail::to_lower(name) + "\n" + detail::to_lower(readme_text);
    for (const auto &[flag, words] : policy.keywords) {
        for (const auto &w : words) {
            if (hay.find(w) != std::string::npos) {
                flags.push_back(flag);
                break;
            }
        }
    }
    return flags;
}

struct RepoDecision {
    bool include = true;
    std::string reason;  // first matching exclusion class, or "override"
};

inline RepoDecision classify_repository(const RepoMeta &meta, const ExclusionPolicy &policy) {
    auto ov = policy.overrides.find(meta.name);
    if (ov != policy.overrides.end()) {
        return ov->second ? RepoDecision{false, "override"} : RepoDecision{true, "override"};
    }
    for (auto f : {ExclusionFlag::Tutorial, ExclusionFlag::LocalOnly,
                   ExclusionFlag::ExploitToolkit, ExclusionFlag::Experimental}) {
        if (std::find(meta.exclusion_flags.begin(), meta.exclusion_flags.end(), f) !=
            meta.exclusion_flags.end())
            return {false, std::string(exclusion_tag(f))};
    }
    return {true, ""};
}

/// Top-n by star count descending, name ascending on ties; excluded repos are
/// removed before ranking. Selection is permutation-invariant.
inline std::vector<RepoMeta> rank_and_select(std::vector<RepoMeta> repos,
                                             const ExclusionPolicy &policy, std::size_t n) {
    std::vector<RepoMeta> kept;
    for (auto &r : repos)
        if (classify_repository(r, policy).include) kept.push_back(std::move(r));
    std::sort(kept.begin(), kept.end(), [](const RepoMeta &a, const RepoMeta &b) {
        if (a.star_count != b.star_count) return a.star_count > b.star_count;
        return a.name < b.name;
    });
    if (kept.size() > n) kept.resize(n);
    return kept;
}

inline std::size_t estimate_tokens(const SourceUnit &unit) {
    return detail::estimate_tokens(unit.content);
}

}  // namespace cryptoscan
