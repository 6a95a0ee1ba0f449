#include "sublogic/parser.hpp"

#include <cctype>
#include <sstream>

#include "sublogic/errors.hpp"

namespace sublogic {

namespace {

struct Token {
    std::string text;
    int col;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '\'' || c == '_';
}

std::vector<Token> tokenize(const std::string& line, int lineno) {
    std::vector<Token> toks;
    size_t i = 0;
    while (i < line.size()) {
        char c = line[i];
        if (c == '#')
            break;
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        int col = static_cast<int>(i) + 1;
        if (c == '(' || c == ')' || c == ',') {
            toks.push_back({std::string(1, c), col});
            ++i;
        } else if (ident_start(c)) {
            size_t j = i + 1;
            while (j < line.size() && ident_char(line[j]))
                ++j;
            toks.push_back({line.substr(i, j - i), col});
            i = j;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i + 1;
            while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j])))
                ++j;
            toks.push_back({line.substr(i, j - i), col});
            i = j;
        } else if (c == '<' && i + 1 < line.size() && line[i + 1] == '=') {
            toks.push_back({"<=", col});
            i += 2;
        } else if (c == '=' && i + 1 < line.size() && line[i + 1] == '=') {
            toks.push_back({"==", col});
            i += 2;
        } else {
            throw ParseError(std::string("unexpected character '") + c + "'", lineno, col);
        }
    }
    return toks;
}

class LineParser {
  public:
    LineParser(const std::vector<Token>& toks, int lineno, const OperatorSet& ops)
        : toks_(toks), lineno_(lineno), ops_(ops) {}

    bool done() const { return pos_ >= toks_.size(); }
    const Token& peek() const {
        if (done())
            throw ParseError("unexpected end of line", lineno_, last_col());
        return toks_[pos_];
    }
    Token next() {
        const Token& t = peek();
        ++pos_;
        return t;
    }
    void expect(const std::string& s) {
        Token t = next();
        if (t.text != s)
            throw ParseError("expected '" + s + "', got '" + t.text + "'", lineno_, t.col);
    }
    int last_col() const { return toks_.empty() ? 1 : toks_.back().col; }

    CPtr concept_expr() {
        Token t = next();
        if (t.text == "(") {
            Token head = next();
            if (head.text == "some" || head.text == "all") {
                Token role = next();
                if (!ident_start(role.text[0]))
                    throw ParseError("expected role name", lineno_, role.col);
                CPtr child = concept_expr();
                expect(")");
                return head.text == "some" ? exists(role.text, child) : forall(role.text, child);
            }
            if (!ops_.has(head.text))
                throw ParseError("unknown operator '" + head.text + "'", lineno_, head.col);
            const TruthTable& tab = ops_.table(head.text);
            std::vector<CPtr> kids;
            while (peek().text != ")")
                kids.push_back(concept_expr());
            expect(")");
            if (static_cast<int>(kids.size()) != tab.arity())
                throw ParseError("operator '" + head.text + "' needs " +
                                     std::to_string(tab.arity()) + " arguments, got " +
                                     std::to_string(kids.size()),
                                 lineno_, head.col);
            return apply(head.text, tab, std::move(kids));
        }
        if (!ident_start(t.text[0]))
            throw ParseError("expected concept, got '" + t.text + "'", lineno_, t.col);
        return atom(t.text);
    }

  private:
    const std::vector<Token>& toks_;
    int lineno_;
    const OperatorSet& ops_;
    size_t pos_ = 0;
};

} // namespace

ProblemInstance parse_instance(const std::string& text) {
    ProblemInstance inst;
    enum class Section { Preamble, Tbox, Abox, Done } section = Section::Preamble;
    bool have_kind = false;

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto toks = tokenize(line, lineno);
        if (toks.empty())
            continue;
        const std::string& head = toks[0].text;

        if (head == "operator") {
            if (section != Section::Preamble)
                throw ParseError("operator declarations must precede sections", lineno,
                                 toks[0].col);
            if (toks.size() != 4)
                throw ParseError("expected: operator <name> <arity> <bits>", lineno,
                                 toks[0].col);
            int arity;
            try {
                arity = std::stoi(toks[2].text);
            } catch (...) {
                throw ParseError("bad arity '" + toks[2].text + "'", lineno, toks[2].col);
            }
            try {
                inst.operators.add({toks[1].text, TruthTable::from_bits(arity, toks[3].text)});
            } catch (const ArgumentError& e) {
                throw ParseError(e.what(), lineno, toks[1].col);
            }
            continue;
        }
        if (head == "problem") {
            if (toks.size() != 2)
                throw ParseError("expected: problem <kind>", lineno, toks[0].col);
            auto k = kind_by_name(toks[1].text);
            if (!k)
                throw ParseError("unknown problem kind '" + toks[1].text + "'", lineno,
                                 toks[1].col);
            inst.kind = *k;
            have_kind = true;
            continue;
        }
        if (head == "tbox" && toks.size() == 1) {
            section = Section::Tbox;
            continue;
        }
        if (head == "abox" && toks.size() == 1) {
            section = Section::Abox;
            continue;
        }
        bool axiom_shaped = toks.size() >= 2 && (toks[1].text == "<=" || toks[1].text == "==");
        if (head == "query" && !axiom_shaped) {
            LineParser p(toks, lineno, inst.operators);
            p.next(); // 'query'
            inst.query = p.concept_expr();
            if (!p.done())
                throw ParseError("trailing tokens after query concept", lineno, p.peek().col);
            section = Section::Done;
            continue;
        }

        if (section == Section::Tbox) {
            LineParser p(toks, lineno, inst.operators);
            CPtr lhs = p.concept_expr();
            Token op = p.next();
            if (op.text != "<=" && op.text != "==")
                throw ParseError("expected '<=' or '==' in axiom", lineno, op.col);
            CPtr rhs = p.concept_expr();
            if (!p.done())
                throw ParseError("trailing tokens after axiom", lineno, p.peek().col);
            inst.ontology.tbox.push_back({lhs, rhs});
            if (op.text == "==")
                inst.ontology.tbox.push_back({rhs, lhs});
            continue;
        }
        if (section == Section::Abox) {
            LineParser p(toks, lineno, inst.operators);
            // Role assertion: IDENT ( a , b ). Anything else is a concept assertion.
            bool is_role = toks.size() == 6 && toks[1].text == "(" && toks[3].text == "," &&
                           toks[5].text == ")" && ident_start(toks[0].text[0]) &&
                           !inst.operators.has(toks[0].text);
            if (is_role) {
                inst.ontology.role_assertions.push_back(
                    {toks[0].text, toks[2].text, toks[4].text});
            } else {
                CPtr c = p.concept_expr();
                p.expect("(");
                Token ind = p.next();
                if (!ident_start(ind.text[0]))
                    throw ParseError("expected individual name", lineno, ind.col);
                p.expect(")");
                if (!p.done())
                    throw ParseError("trailing tokens after assertion", lineno, p.peek().col);
                inst.ontology.concept_assertions.push_back({c, ind.text});
            }
            continue;
        }
        throw ParseError("unexpected line '" + head + "'", lineno, toks[0].col);
    }
    if (!have_kind)
        throw ParseError("missing 'problem' line", lineno, 1);
    try {
        inst.validate();
    } catch (const ArgumentError& e) {
        throw ParseError(e.what(), lineno, 1);
    }
    return inst;
}

std::string print_concept(const CPtr& c) { return c->key(); }

std::string print_instance(const ProblemInstance& inst) {
    std::ostringstream os;
    for (const auto& [name, t] : inst.operators.entries())
        os << "operator " << name << " " << t.arity() << " " << t.bit_string() << "\n";
    os << "problem " << kind_name(inst.kind) << "\n";
    if (!inst.ontology.tbox.empty()) {
        os << "tbox\n";
        for (const auto& ax : inst.ontology.tbox)
            os << "  " << print_concept(ax.lhs) << " <= " << print_concept(ax.rhs) << "\n";
    }
    if (!inst.ontology.concept_assertions.empty() || !inst.ontology.role_assertions.empty()) {
        os << "abox\n";
        for (const auto& [c, ind] : inst.ontology.concept_assertions)
            os << "  " << print_concept(c) << " ( " << ind << " )\n";
        for (const auto& ra : inst.ontology.role_assertions)
            os << "  " << ra.role << " ( " << ra.from << " , " << ra.to << " )\n";
    }
    if (inst.query)
        os << "query " << print_concept(inst.query) << "\n";
    return os.str();
}

OperatorSet parse_operators(const std::string& text) {
    OperatorSet ops;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto toks = tokenize(line, lineno);
        if (toks.empty() || toks[0].text != "operator")
            continue;
        if (toks.size() != 4)
            throw ParseError("expected: operator <name> <arity> <bits>", lineno, toks[0].col);
        int arity;
        try {
            arity = std::stoi(toks[2].text);
        } catch (...) {
            throw ParseError("bad arity '" + toks[2].text + "'", lineno, toks[2].col);
        }
        try {
            ops.add({toks[1].text, TruthTable::from_bits(arity, toks[3].text)});
        } catch (const ArgumentError& e) {
            throw ParseError(e.what(), lineno, toks[1].col);
        }
    }
    return ops;
}

} // namespace sublogic
