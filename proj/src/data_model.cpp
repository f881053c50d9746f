#include "advisory/data_model.hpp"
#include "advisory/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

namespace advisory {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(trim(field));
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

double parse_double(const std::string& s, std::size_t row, const std::string& col) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw ValueError(row, "non-numeric value '" + s + "' in column " + col);
    return v;
}

int parse_hours(const std::string& s, std::size_t row, const std::string& col) {
    double v = parse_double(s, row, col);
    if (v < 0.0 || v != std::floor(v))
        throw ValueError(row, "column " + col + " must be a non-negative integer, got '" + s + "'");
    return static_cast<int>(v);
}

// shortest round-trip decimal text for a double
std::string fmt_double(double v) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, p);
}

const std::vector<std::string> kLStatusValues = {"InStudy", "ExpectedToGraduate"};
const std::vector<std::string> kGenValues = {"M", "F"};
const std::vector<std::string> kAdStatusValues = {"Normal", "NearToRisk", "UnderRisk"};
const std::vector<std::string> kPlanValues = {"Old", "New", "Developed"};

} // namespace

int AttributeSpec::value_index(const std::string& v) const {
    auto it = std::find(values.begin(), values.end(), v);
    return it == values.end() ? -1 : static_cast<int>(it - values.begin());
}

Dataset::Dataset(std::vector<AttributeSpec> schema, std::size_t class_index)
    : schema_(std::move(schema)), class_index_(class_index) {
    if (class_index_ >= schema_.size())
        throw DomainError("class index out of range");
    if (schema_[class_index_].kind != AttrKind::Nominal)
        throw DomainError("class attribute must be nominal");
    std::size_t n_class = 0;
    for (const auto& a : schema_) {
        if (a.role == AttrRole::Class) ++n_class;
        if (a.kind == AttrKind::Nominal) {
            if (a.values.empty())
                throw DomainError("nominal attribute " + a.name + " has an empty vocabulary");
            auto v = a.values;
            std::sort(v.begin(), v.end());
            if (std::adjacent_find(v.begin(), v.end()) != v.end())
                throw DomainError("nominal attribute " + a.name + " has duplicate values");
        }
    }
    if (n_class != 1 || schema_[class_index_].role != AttrRole::Class)
        throw DomainError("exactly one attribute must have role class");
}

void Dataset::add_instance(Instance row) {
    if (row.size() != schema_.size())
        throw SchemaMismatch("instance has " + std::to_string(row.size()) +
                             " values, schema has " + std::to_string(schema_.size()));
    for (std::size_t i = 0; i < row.size(); ++i) {
        const auto& a = schema_[i];
        if (a.role == AttrRole::Id) {
            if (!row[i].is_text()) throw SchemaMismatch("id attribute " + a.name + " needs text");
        } else if (a.kind == AttrKind::Numeric) {
            if (!row[i].is_numeric()) throw SchemaMismatch("attribute " + a.name + " needs a number");
        } else {
            if (!row[i].is_nominal() || row[i].code() < 0 ||
                row[i].code() >= static_cast<int>(a.values.size()))
                throw SchemaMismatch("attribute " + a.name + " needs a vocabulary member");
        }
    }
    instances_.push_back(std::move(row));
}

std::size_t Dataset::attr_index(const std::string& name) const {
    for (std::size_t i = 0; i < schema_.size(); ++i)
        if (schema_[i].name == name) return i;
    throw UnknownAttribute(name);
}

std::vector<double> Dataset::numeric_column(const std::string& name) const {
    std::size_t i = attr_index(name);
    if (schema_[i].kind != AttrKind::Numeric || schema_[i].role == AttrRole::Id)
        throw NotNumeric(name);
    std::vector<double> out;
    out.reserve(instances_.size());
    for (const auto& row : instances_) out.push_back(row[i].num());
    return out;
}

Dataset Dataset::subset(const std::vector<std::size_t>& rows) const {
    Dataset out(schema_, class_index_);
    for (std::size_t r : rows) out.add_instance(instances_[r]);
    return out;
}

std::vector<AttributeSpec> cohort_schema() {
    return {
        {"Sid", AttrKind::Numeric, AttrRole::Id, {}},
        {"Total_Reg_C_H", AttrKind::Numeric, AttrRole::Feature, {}},
        {"Total_Gain_C_H", AttrKind::Numeric, AttrRole::Feature, {}},
        {"Total_Cur_C_H", AttrKind::Numeric, AttrRole::Feature, {}},
        {"CUM_GPA", AttrKind::Numeric, AttrRole::Feature, {}},
        {"Diff_G_R_C_H", AttrKind::Numeric, AttrRole::Derived, {}},
        {"L_STATUS", AttrKind::Nominal, AttrRole::Feature, kLStatusValues},
        {"GEN", AttrKind::Nominal, AttrRole::Feature, kGenValues},
        {"Ad_STATUS", AttrKind::Nominal, AttrRole::Class, kAdStatusValues},
        {"Plan_Study", AttrKind::Nominal, AttrRole::Feature, kPlanValues},
    };
}

std::size_t cohort_class_index() { return 8; }

StudentRecord derive_diff(StudentRecord r) {
    if (r.total_gain_ch > r.total_reg_ch)
        throw NegativeDiff("gained hours " + std::to_string(r.total_gain_ch) +
                           " exceed registered hours " + std::to_string(r.total_reg_ch));
    r.diff_g_r_ch = r.total_reg_ch - r.total_gain_ch;
    return r;
}

GpaBand gpa_band(double cum_gpa) {
    if (cum_gpa >= 3.76) return GpaBand::Good;
    if (cum_gpa >= 2.00) return GpaBand::Poor;
    return GpaBand::BelowScale;
}

const char* to_string(GpaBand b) {
    switch (b) {
        case GpaBand::Good: return "Good";
        case GpaBand::Poor: return "Poor";
        default: return "BelowScale";
    }
}

StudentRecord record_from_row(const Dataset& ds, std::size_t row) {
    const Instance& in = ds.instance(row);
    StudentRecord r;
    r.sid = in[0].text();
    r.total_reg_ch = static_cast<int>(in[1].num());
    r.total_gain_ch = static_cast<int>(in[2].num());
    r.total_cur_ch = static_cast<int>(in[3].num());
    r.cum_gpa = in[4].num();
    r.diff_g_r_ch = static_cast<int>(in[5].num());
    r.l_status = static_cast<LStatus>(in[6].code());
    r.gen = in[7].code() == 1 ? Gender::Female : Gender::Male;
    r.ad_status = static_cast<AdStatus>(in[8].code());
    r.plan_study = static_cast<PlanStudy>(in[9].code());
    return r;
}

Instance row_from_record(const StudentRecord& r) {
    StudentRecord full = r.diff_g_r_ch ? r : derive_diff(r);
    return {
        Cell::id(full.sid),
        Cell::numeric(full.total_reg_ch),
        Cell::numeric(full.total_gain_ch),
        Cell::numeric(full.total_cur_ch),
        Cell::numeric(full.cum_gpa),
        Cell::numeric(*full.diff_g_r_ch),
        Cell::nominal(static_cast<int>(full.l_status)),
        Cell::nominal(full.gen == Gender::Female ? 1 : 0),
        Cell::nominal(static_cast<int>(full.ad_status)),
        Cell::nominal(static_cast<int>(full.plan_study)),
    };
}

Dataset parse_cohort_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw MalformedHeader("empty input");
    const std::vector<std::string> header = split_csv(line);

    const std::vector<AttributeSpec> schema = cohort_schema();
    // column position in the file for each schema attribute; -1 = absent
    std::vector<int> col_of(schema.size(), -1);
    for (std::size_t c = 0; c < header.size(); ++c) {
        bool known = false;
        for (std::size_t a = 0; a < schema.size(); ++a) {
            if (header[c] == schema[a].name) {
                if (col_of[a] != -1)
                    throw MalformedHeader("duplicate column " + header[c]);
                col_of[a] = static_cast<int>(c);
                known = true;
                break;
            }
        }
        if (!known) throw MalformedHeader("unknown column " + header[c]);
    }
    for (std::size_t a = 0; a < schema.size(); ++a) {
        if (col_of[a] == -1 && schema[a].name != "Diff_G_R_C_H")
            throw MalformedHeader("missing column " + schema[a].name);
    }
    const bool has_diff = col_of[5] != -1;

    Dataset ds(schema, cohort_class_index());
    std::size_t row_no = 0;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        ++row_no;
        const std::vector<std::string> fields = split_csv(line);
        if (fields.size() != header.size())
            throw ValueError(row_no, "expected " + std::to_string(header.size()) +
                                     " fields, got " + std::to_string(fields.size()));
        auto field = [&](std::size_t a) -> const std::string& {
            return fields[static_cast<std::size_t>(col_of[a])];
        };
        for (std::size_t a = 0; a < schema.size(); ++a) {
            if (col_of[a] != -1 && field(a).empty())
                throw ValueError(row_no, "missing value in column " + schema[a].name);
        }

        StudentRecord r;
        r.sid = field(0);
        r.total_reg_ch = parse_hours(field(1), row_no, "Total_Reg_C_H");
        r.total_gain_ch = parse_hours(field(2), row_no, "Total_Gain_C_H");
        r.total_cur_ch = parse_hours(field(3), row_no, "Total_Cur_C_H");
        r.cum_gpa = parse_double(field(4), row_no, "CUM_GPA");
        if (r.cum_gpa < 0.0 || r.cum_gpa > 5.0)
            throw ValueError(row_no, "CUM_GPA " + field(4) + " outside [0, 5]");
        if (r.total_gain_ch > r.total_reg_ch)
            throw ValueError(row_no, "Total_Gain_C_H exceeds Total_Reg_C_H");
        if (has_diff) {
            int diff = parse_hours(field(5), row_no, "Diff_G_R_C_H");
            if (diff != r.total_reg_ch - r.total_gain_ch)
                throw ValueError(row_no, "Diff_G_R_C_H does not equal registered minus gained hours");
            r.diff_g_r_ch = diff;
        } else {
            r = derive_diff(r);
        }
        auto nominal = [&](std::size_t a, const std::string& s) {
            int code = schema[a].value_index(s);
            if (code < 0)
                throw ValueError(row_no, "value '" + s + "' not in vocabulary of " + schema[a].name);
            return code;
        };
        r.l_status = static_cast<LStatus>(nominal(6, field(6)));
        r.gen = nominal(7, field(7)) == 1 ? Gender::Female : Gender::Male;
        r.ad_status = static_cast<AdStatus>(nominal(8, field(8)));
        r.plan_study = static_cast<PlanStudy>(nominal(9, field(9)));
        ds.add_instance(row_from_record(r));
    }
    return ds;
}

Dataset parse_cohort_csv(const std::string& text) {
    std::istringstream ss(text);
    return parse_cohort_csv(ss);
}

std::string to_cohort_csv(const Dataset& ds) {
    std::ostringstream out;
    const auto& schema = ds.schema();
    for (std::size_t a = 0; a < schema.size(); ++a)
        out << (a ? "," : "") << schema[a].name;
    out << "\n";
    for (std::size_t r = 0; r < ds.size(); ++r) {
        const Instance& row = ds.instance(r);
        for (std::size_t a = 0; a < schema.size(); ++a) {
            if (a) out << ",";
            if (schema[a].role == AttrRole::Id) out << row[a].text();
            else if (schema[a].kind == AttrKind::Numeric) out << fmt_double(row[a].num());
            else out << schema[a].values[static_cast<std::size_t>(row[a].code())];
        }
        out << "\n";
    }
    return out.str();
}

nlohmann::json schema_to_json(const std::vector<AttributeSpec>& schema) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& a : schema) {
        nlohmann::json j{{"name", a.name},
                         {"kind", a.kind == AttrKind::Numeric ? "numeric" : "nominal"}};
        switch (a.role) {
            case AttrRole::Id: j["role"] = "id"; break;
            case AttrRole::Feature: j["role"] = "feature"; break;
            case AttrRole::Class: j["role"] = "class"; break;
            case AttrRole::Derived: j["role"] = "derived"; break;
        }
        if (a.kind == AttrKind::Nominal) j["values"] = a.values;
        out.push_back(std::move(j));
    }
    return out;
}

std::vector<AttributeSpec> schema_from_json(const nlohmann::json& j) {
    std::vector<AttributeSpec> schema;
    for (const auto& e : j) {
        AttributeSpec a;
        a.name = e.at("name").get<std::string>();
        a.kind = e.at("kind") == "numeric" ? AttrKind::Numeric : AttrKind::Nominal;
        const std::string role = e.at("role").get<std::string>();
        if (role == "id") a.role = AttrRole::Id;
        else if (role == "class") a.role = AttrRole::Class;
        else if (role == "derived") a.role = AttrRole::Derived;
        else a.role = AttrRole::Feature;
        if (e.contains("values")) a.values = e.at("values").get<std::vector<std::string>>();
        schema.push_back(std::move(a));
    }
    return schema;
}

Dataset drop_features(const Dataset& ds, const std::vector<std::string>& names) {
    std::vector<bool> drop(ds.n_attributes(), false);
    for (const auto& name : names) {
        std::size_t i = ds.attr_index(name);
        if (ds.attribute(i).role == AttrRole::Class)
            throw DomainError("cannot drop the class attribute " + name);
        drop[i] = true;
    }
    std::vector<AttributeSpec> schema;
    std::vector<std::size_t> keep;
    std::size_t class_index = 0;
    for (std::size_t i = 0; i < ds.n_attributes(); ++i) {
        if (drop[i]) continue;
        if (i == ds.class_index()) class_index = schema.size();
        schema.push_back(ds.attribute(i));
        keep.push_back(i);
    }
    Dataset out(std::move(schema), class_index);
    for (std::size_t r = 0; r < ds.size(); ++r) {
        Instance row;
        row.reserve(keep.size());
        for (std::size_t i : keep) row.push_back(ds.instance(r)[i]);
        out.add_instance(std::move(row));
    }
    return out;
}

nlohmann::json dataset_to_json(const Dataset& ds) {
    nlohmann::json schema = schema_to_json(ds.schema());
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < ds.size(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        const Instance& in = ds.instance(r);
        for (std::size_t a = 0; a < ds.n_attributes(); ++a) {
            const auto& spec = ds.attribute(a);
            if (spec.role == AttrRole::Id) row.push_back(in[a].text());
            else if (spec.kind == AttrKind::Numeric) row.push_back(in[a].num());
            else row.push_back(spec.values[static_cast<std::size_t>(in[a].code())]);
        }
        rows.push_back(std::move(row));
    }
    return {{"schema", schema}, {"class_index", ds.class_index()}, {"rows", rows}};
}

std::vector<std::pair<std::string, Dataset>> partition_by(const Dataset& ds,
                                                          const std::string& attr) {
    std::size_t a = ds.attr_index(attr);
    const AttributeSpec& spec = ds.attribute(a);
    if (spec.kind != AttrKind::Nominal) throw NotNominal(attr);
    std::vector<std::vector<std::size_t>> groups(spec.values.size());
    for (std::size_t r = 0; r < ds.size(); ++r)
        groups[static_cast<std::size_t>(ds.instance(r)[a].code())].push_back(r);
    std::vector<std::pair<std::string, Dataset>> out;
    for (std::size_t v = 0; v < groups.size(); ++v) {
        if (groups[v].empty()) continue;
        out.emplace_back(spec.values[v], ds.subset(groups[v]));
    }
    return out;
}

} // namespace advisory
