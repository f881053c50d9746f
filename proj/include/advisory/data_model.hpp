#ifndef ADVISORY_DATA_MODEL_HPP
#define ADVISORY_DATA_MODEL_HPP

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace advisory {

enum class AttrKind { Numeric, Nominal };
enum class AttrRole { Id, Feature, Class, Derived };

struct AttributeSpec {
    std::string name;
    AttrKind kind = AttrKind::Numeric;
    AttrRole role = AttrRole::Feature;
    std::vector<std::string> values; // nominal vocabulary, in schema order

    // index of a nominal value, -1 if not in the vocabulary
    int value_index(const std::string& v) const;

    bool operator==(const AttributeSpec&) const = default;
};

// One attribute value of one instance. Numeric attributes hold a double,
// nominal attributes hold the index into the vocabulary, id attributes
// hold opaque text.
class Cell {
public:
    Cell() : v_(0.0) {}
    static Cell numeric(double x) { return Cell(x); }
    static Cell nominal(int code) { return Cell(code); }
    static Cell id(std::string text) { return Cell(std::move(text)); }

    bool is_numeric() const { return std::holds_alternative<double>(v_); }
    bool is_nominal() const { return std::holds_alternative<int>(v_); }
    bool is_text() const { return std::holds_alternative<std::string>(v_); }

    double num() const { return std::get<double>(v_); }
    int code() const { return std::get<int>(v_); }
    const std::string& text() const { return std::get<std::string>(v_); }

    bool operator==(const Cell&) const = default;

private:
    explicit Cell(double x) : v_(x) {}
    explicit Cell(int c) : v_(c) {}
    explicit Cell(std::string s) : v_(std::move(s)) {}
    std::variant<double, int, std::string> v_;
};

using Instance = std::vector<Cell>;

// Typed attribute schema plus instances; one attribute is the class.
// Treat as immutable once filled: safe to share read-only across threads.
class Dataset {
public:
    Dataset(std::vector<AttributeSpec> schema, std::size_t class_index);

    void add_instance(Instance row); // validates against the schema

    const std::vector<AttributeSpec>& schema() const { return schema_; }
    const AttributeSpec& attribute(std::size_t i) const { return schema_[i]; }
    std::size_t class_index() const { return class_index_; }
    const AttributeSpec& class_attribute() const { return schema_[class_index_]; }
    std::size_t n_attributes() const { return schema_.size(); }
    std::size_t size() const { return instances_.size(); }
    bool empty() const { return instances_.empty(); }
    const Instance& instance(std::size_t i) const { return instances_[i]; }
    const std::vector<Instance>& instances() const { return instances_; }

    // throws UnknownAttribute
    std::size_t attr_index(const std::string& name) const;

    int class_code(std::size_t row) const { return instances_[row][class_index_].code(); }

    // values of a numeric attribute over all rows; throws NotNumeric
    std::vector<double> numeric_column(const std::string& name) const;

    // new dataset with the same schema restricted to the given rows
    Dataset subset(const std::vector<std::size_t>& rows) const;

    bool operator==(const Dataset&) const = default;

private:
    std::vector<AttributeSpec> schema_;
    std::size_t class_index_;
    std::vector<Instance> instances_;
};

// --- Cohort schema ---------------------------------------------------------

enum class LStatus { InStudy, ExpectedToGraduate };
enum class Gender { Male, Female };
enum class AdStatus { Normal, NearToRisk, UnderRisk };
enum class PlanStudy { Old, New, Developed };
enum class GpaBand { Good, Poor, BelowScale };

struct StudentRecord {
    std::string sid;
    int total_reg_ch = 0;
    int total_gain_ch = 0;
    int total_cur_ch = 0;
    double cum_gpa = 0.0;
    std::optional<int> diff_g_r_ch; // derived when absent
    LStatus l_status = LStatus::InStudy;
    Gender gen = Gender::Male;
    AdStatus ad_status = AdStatus::Normal;
    PlanStudy plan_study = PlanStudy::New;

    bool operator==(const StudentRecord&) const = default;
};

// The canonical cohort schema: Sid, Total_Reg_C_H, Total_Gain_C_H,
// Total_Cur_C_H, CUM_GPA, Diff_G_R_C_H, L_STATUS, GEN, Ad_STATUS,
// Plan_Study; Ad_STATUS is the class attribute.
std::vector<AttributeSpec> cohort_schema();
std::size_t cohort_class_index();

// fills diff_g_r_ch = reg - gain; throws NegativeDiff when gain > reg;
// idempotent on records that already carry a consistent diff
StudentRecord derive_diff(StudentRecord r);

// precondition gpa in [0, 5], enforced upstream
GpaBand gpa_band(double cum_gpa);

StudentRecord record_from_row(const Dataset& ds, std::size_t row);
Instance row_from_record(const StudentRecord& r);

// CSV ingestion of the cohort layout; throws MalformedHeader / ValueError
Dataset parse_cohort_csv(std::istream& in);
Dataset parse_cohort_csv(const std::string& text);

// CSV emission (always includes Diff_G_R_C_H); reparsing the output
// yields an identical Dataset
std::string to_cohort_csv(const Dataset& ds);

// JSON export: {"schema": [...], "class_index": i, "rows": [...]}
nlohmann::json dataset_to_json(const Dataset& ds);

nlohmann::json schema_to_json(const std::vector<AttributeSpec>& schema);
std::vector<AttributeSpec> schema_from_json(const nlohmann::json& j);

// copy of ds without the named feature attributes (class/id cannot be
// dropped); throws UnknownAttribute / DomainError
Dataset drop_features(const Dataset& ds, const std::vector<std::string>& names);

// split on a nominal attribute; groups come back in vocabulary order,
// empty groups omitted; throws UnknownAttribute / NotNominal
std::vector<std::pair<std::string, Dataset>> partition_by(const Dataset& ds,
                                                          const std::string& attr);

const char* to_string(GpaBand b);

} // namespace advisory

#endif
