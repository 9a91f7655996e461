#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sl2q/heis_verma.hpp"
#include "sl2q/imaginary_verma.hpp"
#include "sl2q/lie_algebra.hpp"

namespace cli {

enum class Format { Json, Tsv };

struct Overrides {
    std::optional<int> bound;
    std::optional<int> maxlen;
    std::optional<std::string> format;
};

/// Effective configuration: the JSON document with CLI overrides applied.
struct Session {
    nlohmann::ordered_json doc;  // normalized, used for the digest
    sl2q::Field field;
    sl2q::LieAlgebra algebra;
    sl2q::Weight weight;
    sl2q::SupportBox box;
    Format format = Format::Json;
    std::string digest;

    int rank() const { return field.rank(); }
};

/// Throws sl2q::Error{InvalidConfig} or {ParseError}.
Session load_session(const std::string& path, const Overrides& overrides);

/// "fnv1a:0123456789abcdef" over the bytes of `text`.
std::string fnv1a_digest(const std::string& text);

/// Worker count from SL2Q_THREADS (default 1).
unsigned thread_count();

// Textual arguments.  All throw sl2q::Error{ParseError}.

/// "(1,-2)", "[1,-2]" or "1,-2".
sl2q::LatticeVector parse_vector(const std::string& text, int n);
std::vector<std::int64_t> parse_ints(const std::string& text);

/// Comma separated terms "HEAD [COEFF]"; the coefficient defaults to 1.
std::vector<std::pair<std::string, std::string>> split_terms(const std::string& text);

sl2q::AlgebraElement parse_element(const std::string& text, const sl2q::Field& field);
sl2q::TorusElement parse_torus(const std::string& text, const sl2q::Field& field);

/// One letter per factor, e.g. "Y(1,0)U(-1,0)v"; the trailing v is optional.
std::vector<sl2q::BasisKey> parse_word(const std::string& text, int n);

sl2q::HeisVector parse_heis_vector(const std::string& text, const sl2q::HeisModule& H);
sl2q::MVector parse_m_vector(const std::string& text, const sl2q::VermaModule& V);

}  // namespace cli
