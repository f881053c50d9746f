#ifndef ADVISORY_ERRORS_HPP
#define ADVISORY_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace advisory {

// Base class for all library errors. CLI maps these to exit code 1.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class DomainError : public Error {
public:
    explicit DomainError(const std::string& msg) : Error("domain error: " + msg) {}
};

class MalformedHeader : public Error {
public:
    explicit MalformedHeader(const std::string& msg) : Error("malformed header: " + msg) {}
};

// Carries the 1-based data row number where parsing failed.
class ValueError : public Error {
public:
    ValueError(std::size_t row, const std::string& msg)
        : Error("row " + std::to_string(row) + ": " + msg), row_(row) {}
    std::size_t row() const { return row_; }
private:
    std::size_t row_;
};

class NegativeDiff : public Error {
public:
    explicit NegativeDiff(const std::string& msg) : Error("negative diff: " + msg) {}
};

class UnknownAttribute : public Error {
public:
    explicit UnknownAttribute(const std::string& name) : Error("unknown attribute: " + name) {}
};

class NotNominal : public Error {
public:
    explicit NotNominal(const std::string& name) : Error("attribute is not nominal: " + name) {}
};

class NotNumeric : public Error {
public:
    explicit NotNumeric(const std::string& name) : Error("attribute is not numeric: " + name) {}
};

class EmptyInput : public Error {
public:
    explicit EmptyInput(const std::string& what) : Error("empty input: " + what) {}
};

class EmptyDataset : public Error {
public:
    EmptyDataset() : Error("empty dataset") {}
};

class NoFeatures : public Error {
public:
    NoFeatures() : Error("dataset has no feature attributes") {}
};

class KTooLarge : public Error {
public:
    explicit KTooLarge(const std::string& msg) : Error("k too large: " + msg) {}
};

class KOutOfRange : public Error {
public:
    explicit KOutOfRange(const std::string& msg) : Error("fold count out of range: " + msg) {}
};

class SchemaMismatch : public Error {
public:
    explicit SchemaMismatch(const std::string& msg) : Error("schema mismatch: " + msg) {}
};

class EmptyMatrix : public Error {
public:
    EmptyMatrix() : Error("confusion matrix has no observations") {}
};

class DegenerateBaseline : public Error {
public:
    explicit DegenerateBaseline(const std::string& msg) : Error("degenerate baseline: " + msg) {}
};

class MissingGroup : public Error {
public:
    explicit MissingGroup(const std::string& msg) : Error("missing group: " + msg) {}
};

class UnsupportedFormat : public Error {
public:
    explicit UnsupportedFormat(const std::string& fmt) : Error("unsupported format: " + fmt) {}
};

class InvalidParams : public Error {
public:
    explicit InvalidParams(const std::string& msg) : Error("invalid generator params: " + msg) {}
};

} // namespace advisory

#endif
