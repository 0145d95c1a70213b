#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace citemetric {

// Base class for everything this library throws on purpose. Validation
// problems (bad input data, contract violations) derive from Error;
// filesystem trouble derives from IoFailure so callers can map the two
// onto different exit codes.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class IoFailure : public Error {
public:
    IoFailure(std::string path, const std::string& reason)
        : Error("i/o failure on '" + path + "': " + reason), path_(std::move(path)) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

// A CSV row that cannot be parsed or violates a per-row constraint.
// `line` is 1-based and counts physical lines, header included.
class MalformedRow : public Error {
public:
    MalformedRow(std::string file, std::size_t line, const std::string& reason)
        : Error(file + ":" + std::to_string(line) + ": " + reason),
          file_(std::move(file)), line_(line) {}
    const std::string& file() const { return file_; }
    std::size_t line() const { return line_; }

private:
    std::string file_;
    std::size_t line_;
};

class DuplicatePubId : public Error {
public:
    explicit DuplicatePubId(const std::string& pub_id)
        : Error("duplicate pub_id '" + pub_id + "'") {}
};

class DanglingOeuvreReference : public Error {
public:
    DanglingOeuvreReference(const std::string& researcher_id, const std::string& pub_id)
        : Error("oeuvre of researcher '" + researcher_id + "' references unknown pub_id '" +
                pub_id + "'") {}
};

class CitationBeforePublication : public Error {
public:
    CitationBeforePublication(const std::string& pub_id, int citation_year, int pub_year)
        : Error("publication '" + pub_id + "' (year " + std::to_string(pub_year) +
                ") has citations in earlier year " + std::to_string(citation_year)) {}
};

class WindowBeforePublication : public Error {
public:
    WindowBeforePublication(const std::string& pub_id, int window_end, int pub_year)
        : Error("window end " + std::to_string(window_end) + " precedes publication year " +
                std::to_string(pub_year) + " of '" + pub_id + "'") {}
};

class EmptyCorpus : public Error {
public:
    EmptyCorpus() : Error("corpus contains no publications") {}
};

// Thrown by score_oeuvre when the included set is empty. Carries the
// itemized exclusions so callers can still present the oeuvre.
class AllPublicationsExcluded : public Error {
public:
    AllPublicationsExcluded(std::string researcher_id,
                            std::vector<std::pair<std::string, std::string>> exclusions)
        : Error("all " + std::to_string(exclusions.size()) + " publications of researcher '" +
                researcher_id + "' were excluded from scoring"),
          researcher_id_(std::move(researcher_id)), exclusions_(std::move(exclusions)) {}
    const std::string& researcher_id() const { return researcher_id_; }
    const std::vector<std::pair<std::string, std::string>>& exclusions() const {
        return exclusions_;
    }

private:
    std::string researcher_id_;
    std::vector<std::pair<std::string, std::string>> exclusions_;
};

class TooFewPublications : public Error {
public:
    TooFewPublications(std::size_t n, std::size_t required)
        : Error("operation needs at least " + std::to_string(required) +
                " included publications, got " + std::to_string(n)) {}
};

class InvalidSpec : public Error {
public:
    explicit InvalidSpec(const std::string& reason)
        : Error("invalid generator spec: " + reason) {}
};

}  // namespace citemetric
