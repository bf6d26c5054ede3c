#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cryptoscan/detail/util.hpp"

namespace cryptoscan {

// ---------------------------------------------------------------------------
// Misuse taxonomy
// ---------------------------------------------------------------------------

/// The six-category misuse taxonomy plus a catch-all for findings outside it.
enum class MisuseCategory {
    BrokenAlgorithm,
    ImproperCertValidation,
    InsufficientRandomness,
    InadequateStrength,
    HardcodedCredentials,
    LessSecureNegotiation,
    OutOfTaxonomy,
};

inline constexpr std::array<MisuseCategory, 6> kInTaxonomyCategories = {
    MisuseCategory::BrokenAlgorithm,       MisuseCategory::ImproperCertValidation,
    MisuseCategory::InsufficientRandomness, MisuseCategory::InadequateStrength,
    MisuseCategory::HardcodedCredentials,  MisuseCategory::LessSecureNegotiation,
};

/// Stable machine tag, used in data files and JSON output.
inline std::string_view category_tag(MisuseCategory c) {
    switch (c) {
        case MisuseCategory::BrokenAlgorithm: return "BrokenAlgorithm";
        case MisuseCategory::ImproperCertValidation: return "ImproperCertValidation";
        case MisuseCategory::InsufficientRandomness: return "InsufficientRandomness";
        case MisuseCategory::InadequateStrength: return "InadequateStrength";
        case MisuseCategory::HardcodedCredentials: return "HardcodedCredentials";
        case MisuseCategory::LessSecureNegotiation: return "LessSecureNegotiation";
        case MisuseCategory::OutOfTaxonomy: return "OutOfTaxonomy";
    }
    return "OutOfTaxonomy";
}

/// Human-readable category name, as shown in task-aware prompts.
inline std::string_view category_display(MisuseCategory c) {
    switch (c) {
        case MisuseCategory::BrokenAlgorithm:
            return "Use of a Broken or Risky Cryptographic Algorithm";
        case MisuseCategory::ImproperCertValidation: return "Improper Certificate Validation";
        case MisuseCategory::InsufficientRandomness:
            return "Use of Insufficiently Random Values";
        case MisuseCategory::InadequateStrength: return "Inadequate Encryption Strength";
        case MisuseCategory::HardcodedCredentials: return "Use of Hardcoded Credentials";
        case MisuseCategory::LessSecureNegotiation:
            return "Selection of Less-Secure Algorithm During Negotiation";
        case MisuseCategory::OutOfTaxonomy: return "Out of Taxonomy";
    }
    return "Out of Taxonomy";
}

inline std::optional<MisuseCategory> category_from_tag(std::string_view tag) {
    for (auto c : kInTaxonomyCategories)
        if (tag == category_tag(c)) return c;
    if (tag == category_tag(MisuseCategory::OutOfTaxonomy)) return MisuseCategory::OutOfTaxonomy;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Detection settings
// ---------------------------------------------------------------------------

enum class DetectionMode { Unconstrained, TaskAware };

inline std::string_view mode_tag(DetectionMode m) {
    return m == DetectionMode::Unconstrained ? "UC" : "TA";
}

/// One cell of the UC/TA x with/without-validation grid.
struct DetectionSetting {
    DetectionMode mode = DetectionMode::TaskAware;
    bool validation = true;
    int query_count = 5;

    DetectionSetting() = default;
    DetectionSetting(DetectionMode m, bool v, int k) : mode(m), validation(v), query_count(k) {
        if (k < 1) throw std::invalid_argument("query_count must be >= 1");
    }
};

// ---------------------------------------------------------------------------
// Source units
// ---------------------------------------------------------------------------

enum class Language { Java, Python, Other };

inline std::string_view language_tag(Language l) {
    switch (l) {
        case Language::Java: return "Java";
        case Language::Python: return "Python";
        case Language::Other: return "Other";
    }
    return "Other";
}

/// One analyzable class-level source file.
struct SourceUnit {
    std::string path;  // relative path within the scanned tree
    Language language = Language::Other;
    std::string content;
    std::size_t byte_size = 0;
    std::size_t token_estimate = 0;
    std::vector<std::string> crypto_markers;
};

inline SourceUnit make_source_unit(std::string path, Language language, std::string content,
                                   std::vector<std::string> markers = {}) {
    SourceUnit u;
    u.path = std::move(path);
    u.language = language;
    u.byte_size = content.size();
    u.token_estimate = detail::estimate_tokens(content);
    u.content = std::move(content);
    u.crypto_markers = std::move(markers);
    return u;
}

// ---------------------------------------------------------------------------
// Alerts
// ---------------------------------------------------------------------------

enum class AlertStatus { Candidate, ValidatedKept, ValidatedDropped };

inline std::string_view status_tag(AlertStatus s) {
    switch (s) {
        case AlertStatus::Candidate: return "Candidate";
        case AlertStatus::ValidatedKept: return "ValidatedKept";
        case AlertStatus::ValidatedDropped: return "ValidatedDropped";
    }
    return "Candidate";
}

struct LineSpan {
    int start = 0;  // 1-based, inclusive
    int end = 0;

    friend bool operator==(const LineSpan &, const LineSpan &) = default;
};

/// One model-reported misuse.
struct Alert {
    MisuseCategory category = MisuseCategory::OutOfTaxonomy;
    std::string unit_path;
    std::optional<LineSpan> line_span;
    std::string api;
    std::string root_cause;
    std::string recommendation;
    int support_count = 1;
    DetectionSetting origin_setting;
    AlertStatus status = AlertStatus::Candidate;
    std::string validation_justification;  // set when a validator kept/dropped it
};

/// Status lattice: Candidate -> ValidatedKept | ValidatedDropped, nothing leaves
/// a Validated* state.
inline Alert with_status(Alert a, AlertStatus next, std::string justification = "") {
    if (a.status != AlertStatus::Candidate && next != a.status)
        throw std::logic_error("alert status is final: " + std::string(status_tag(a.status)));
    a.status = next;
    if (!justification.empty()) a.validation_justification = std::move(justification);
    return a;
}

// ---------------------------------------------------------------------------
// Alert identity
// ---------------------------------------------------------------------------

struct SignatureOptions {
    /// Line bucket width; 1 = exact start line.
    int line_granularity = 1;
};

/// Deduplication identity: equal misuses reported with different wording map
/// to the same key.
struct SignatureKey {
    std::string value;

    friend bool operator==(const SignatureKey &, const SignatureKey &) = default;
    friend bool operator<(const SignatureKey &a, const SignatureKey &b) {
        return a.value < b.value;
    }
};

inline std::string normalize_api(std::string_view api) {
    auto t = detail::trim(api);
    // strip a trailing call suffix so "getInstance()" == "getInstance"
    while (t.size() >= 2 && t.substr(t.size() - 2) == "()") t.remove_suffix(2);
    return detail::to_lower(t);
}

inline SignatureKey alert_signature(const Alert &a, const SignatureOptions &opts = {}) {
    int gran = opts.line_granularity > 0 ? opts.line_granularity : 1;
    std::string bucket = "unit";
    if (a.line_span && a.line_span->start > 0)
        bucket = std::to_string((a.line_span->start - 1) / gran);
    std::string key;
    key.reserve(a.unit_path.size() + a.api.size() + 32);
    key.append(category_tag(a.category));
    key.push_back('|');
    key.append(a.unit_path);
    key.push_back('|');
    key.append(normalize_api(a.api));
    key.push_back('|');
    key.append(bucket);
    return SignatureKey{std::move(key)};
}

// ---------------------------------------------------------------------------
// Taxonomy lexicon and label canonicalization
// ---------------------------------------------------------------------------

/// Keyword lexicon mapping free-text labels onto taxonomy tags. Entries are
/// matched case-insensitively as substrings; the longest matching keyword
/// wins, ties broken by entry order.
class TaxonomyLexicon {
  public:
    struct Entry {
        MisuseCategory category;
        std::string keyword;  // stored lowercase
    };

    void add(MisuseCategory category, std::string_view keyword) {
        auto k = detail::to_lower(detail::trim(keyword));
        if (k.empty()) throw std::invalid_argument("empty lexicon keyword");
        entries_.push_back({category, std::move(k)});
    }

    const std::vector<Entry> &entries() const { return entries_; }

    /// Line format: `<CategoryTag>\t<keyword>`, `#` comments, blank lines ignored.
    static TaxonomyLexicon parse(std::string_view text) {
        TaxonomyLexicon lex;
        for (const auto &raw : detail::split_lines(text)) {
            auto line = detail::trim(raw);
            if (line.empty() || line.front() == '#') continue;
            auto tab = line.find('\t');
            if (tab == std::string_view::npos)
                throw std::runtime_error("lexicon line missing tab: " + std::string(line));
            auto cat = category_from_tag(detail::trim(line.substr(0, tab)));
            if (!cat)
                throw std::runtime_error("unknown category tag in lexicon: " + std::string(line));
            lex.add(*cat, line.substr(tab + 1));
        }
        return lex;
    }

    static TaxonomyLexicon load(const std::filesystem::path &path) {
        return parse(detail::read_file(path));
    }

    /// Built-in defaults; `data/taxonomy_lexicon.tsv` ships the same entries.
    static const TaxonomyLexicon &defaults();

  private:
    std::vector<Entry> entries_;
};

/// Map a model-emitted category label onto the taxonomy. Total: unmatched
/// labels map to OutOfTaxonomy, never an error.
inline MisuseCategory canonical_category(std::string_view label,
                                         const TaxonomyLexicon &lexicon = TaxonomyLexicon::defaults()) {
    if (label.empty()) throw std::invalid_argument("canonical_category: empty label");
    auto lowered = detail::to_lower(label);
    const TaxonomyLexicon::Entry *best = nullptr;
    for (const auto &e : lexicon.entries()) {
        if (lowered.find(e.keyword) == std::string::npos) continue;
        if (!best || e.keyword.size() > best->keyword.size()) best = &e;
    }
    return best ? best->category : MisuseCategory::OutOfTaxonomy;
}

inline const char *default_taxonomy_lexicon_text() {
    // Keep byte-identical with data/taxonomy_lexicon.tsv (sync-checked in tests).
    return
        "# Taxonomy lexicon: <CategoryTag>\\t<keyword>, matched case-insensitively.\n"
        "# Longest matching keyword wins; ties break on entry order.\n"
        "BrokenAlgorithm\tbroken or risky cryptographic algorithm\n"
        "BrokenAlgorithm\tbroken algorithm\n"
        "BrokenAlgorithm\trisky algorithm\n"
        "BrokenAlgorithm\tbroken\n"
        "BrokenAlgorithm\trisky\n"
        "BrokenAlgorithm\tweak hash\n"
        "BrokenAlgorithm\tweak cipher\n"
        "BrokenAlgorithm\tweak\n"
        "BrokenAlgorithm\toutdated\n"
        "BrokenAlgorithm\tdeprecated\n"
        "BrokenAlgorithm\tinsecure algorithm\n"
        "BrokenAlgorithm\tmd2\n"
        "BrokenAlgorithm\tmd4\n"
        "BrokenAlgorithm\tmd5\n"
        "BrokenAlgorithm\tsha-1\n"
        "BrokenAlgorithm\tsha1\n"
        "BrokenAlgorithm\tdes\n"
        "BrokenAlgorithm\trc4\n"
        "BrokenAlgorithm\tarcfour\n"
        "BrokenAlgorithm\tblowfish\n"
        "BrokenAlgorithm\tecb\n"
        "BrokenAlgorithm\tcwe-327\n"
        "ImproperCertValidation\timproper certificate validation\n"
        "ImproperCertValidation\tcertificate validation\n"
        "ImproperCertValidation\tcertificate\n"
        "ImproperCertValidation\tcert check\n"
        "ImproperCertValidation\thostname verif\n"
        "ImproperCertValidation\ttrust manager\n"
        "ImproperCertValidation\ttrustmanager\n"
        "ImproperCertValidation\tssl verification\n"
        "ImproperCertValidation\tcwe-295\n"
        "InsufficientRandomness\tinsufficiently random\n"
        "InsufficientRandomness\tinsufficient randomness\n"
        "InsufficientRandomness\tpredictable random\n"
        "InsufficientRandomness\tinsecure random\n"
        "InsufficientRandomness\tprng\n"
        "InsufficientRandomness\tpseudo-random\n"
        "InsufficientRandomness\tpseudorandom\n"
        "InsufficientRandomness\trandom\n"
        "InsufficientRandomness\tnonce reuse\n"
        "InsufficientRandomness\tstatic iv\n"
        "InsufficientRandomness\tpredictable seed\n"
        "InsufficientRandomness\tcwe-330\n"
        "InsufficientRandomness\tcwe-338\n"
        "InadequateStrength\tinadequate encryption strength\n"
        "InadequateStrength\tencryption strength\n"
        "InadequateStrength\tinadequate strength\n"
        "InadequateStrength\tkey size\n"
        "InadequateStrength\tkey length\n"
        "InadequateStrength\tshort key\n"
        "InadequateStrength\titeration count\n"
        "InadequateStrength\tlow iteration\n"
        "InadequateStrength\tstatic salt\n"
        "InadequateStrength\tsalt\n"
        "InadequateStrength\t1024-bit\n"
        "InadequateStrength\t512-bit\n"
        "InadequateStrength\tcwe-326\n"
        "HardcodedCredentials\thardcoded credentials\n"
        "HardcodedCredentials\thard-coded credentials\n"
        "HardcodedCredentials\thardcoded\n"
        "HardcodedCredentials\thard-coded\n"
        "HardcodedCredentials\thardcode\n"
        "HardcodedCredentials\tembedded password\n"
        "HardcodedCredentials\tembedded key\n"
        "HardcodedCredentials\tcwe-798\n"
        "LessSecureNegotiation\tless-secure algorithm during negotiation\n"
        "LessSecureNegotiation\tless-secure negotiation\n"
        "LessSecureNegotiation\tless secure algorithm\n"
        "LessSecureNegotiation\tless-secure algorithm\n"
        "LessSecureNegotiation\tnegotiation\n"
        "LessSecureNegotiation\tdowngrade\n"
        "LessSecureNegotiation\tsslv2\n"
        "LessSecureNegotiation\tsslv3\n"
        "LessSecureNegotiation\ttlsv1.0\n"
        "LessSecureNegotiation\ttlsv1\n"
        "LessSecureNegotiation\tprotocol version\n"
        "LessSecureNegotiation\tcwe-757\n";
}

inline const TaxonomyLexicon &TaxonomyLexicon::defaults() {
    static const TaxonomyLexicon lex = parse(default_taxonomy_lexicon_text());
    return lex;
}

// ---------------------------------------------------------------------------
// Failure patterns (FP taxonomy for adjudicated alerts)
// ---------------------------------------------------------------------------

enum class FailurePatternKind {
    ErroneousCryptoKnowledge,
    CodeSemanticsMisunderstanding,
    HallucinationOrDoS,
};

enum class MisunderstandingKind {
    SecureImplementationOversight,
    VariableMisinterpretation,
    ContextInappropriate,
    ContextualBlindSpot,
    PathInsensitive,
};

inline std::string_view failure_pattern_tag(FailurePatternKind k) {
    switch (k) {
        case FailurePatternKind::ErroneousCryptoKnowledge: return "ErroneousCryptoKnowledge";
        case FailurePatternKind::CodeSemanticsMisunderstanding:
            return "CodeSemanticsMisunderstanding";
        case FailurePatternKind::HallucinationOrDoS: return "HallucinationOrDoS";
    }
    return "ErroneousCryptoKnowledge";
}

inline std::string_view misunderstanding_tag(MisunderstandingKind k) {
    switch (k) {
        case MisunderstandingKind::SecureImplementationOversight:
            return "SecureImplementationOversight";
        case MisunderstandingKind::VariableMisinterpretation: return "VariableMisinterpretation";
        case MisunderstandingKind::ContextInappropriate: return "ContextInappropriate";
        case MisunderstandingKind::ContextualBlindSpot: return "ContextualBlindSpot";
        case MisunderstandingKind::PathInsensitive: return "PathInsensitive";
    }
    return "PathInsensitive";
}

/// An FP-cause annotation; `sub` is only meaningful for the code-semantics
/// pattern and is rejected elsewhere.
struct FailurePattern {
    FailurePatternKind pattern;
    std::optional<MisunderstandingKind> sub;

    FailurePattern(FailurePatternKind p, std::optional<MisunderstandingKind> s = std::nullopt)
        : pattern(p), sub(s) {
        if (sub && pattern != FailurePatternKind::CodeSemanticsMisunderstanding)
            throw std::invalid_argument("sub-pattern requires CodeSemanticsMisunderstanding");
    }
};

}  // namespace cryptoscan
