#pragma once

// English function-word inventory (closed-class words: determiners,
// pronouns, prepositions, conjunctions, auxiliaries and common grammatical
// adverbs). Version tag is part of every vocabulary fingerprint's inputs via
// the list checksum.

#include <string_view>

namespace veracity {

inline constexpr std::string_view kFunctionWordsVersion = "function-words/1";

inline constexpr std::string_view kFunctionWords[] = {
    "a", "about", "above", "across", "after", "afterwards", "again", "against", "all", "almost",
    "alone", "along", "already", "also", "although", "always", "am", "among", "amongst", "an",
    "and", "another", "any", "anybody", "anyhow", "anyone", "anything", "anyway", "anywhere", "are",
    "around", "as", "at", "back", "be", "became", "because", "become", "becomes", "becoming",
    "been", "before", "beforehand", "behind", "being", "below", "beside", "besides", "between", "beyond",
    "both", "but", "by", "can", "cannot", "could", "did", "do", "does", "doing",
    "done", "down", "during", "each", "either", "else", "elsewhere", "enough", "even", "ever",
    "every", "everybody", "everyone", "everything", "everywhere", "except", "few", "for", "former", "formerly",
    "from", "further", "furthermore", "had", "has", "have", "having", "he", "hence", "her",
    "here", "hereafter", "hereby", "herein", "hers", "herself", "him", "himself", "his", "how",
    "however", "i", "if", "in", "indeed", "inside", "instead", "into", "is", "it",
    "its", "itself", "just", "least", "less", "many", "may", "me", "meanwhile", "might",
    "mine", "more", "moreover", "most", "mostly", "much", "must", "my", "myself", "namely",
    "neither", "never", "nevertheless", "next", "no", "nobody", "none", "noone", "nor", "not",
    "nothing", "now", "nowhere", "of", "off", "often", "on", "once", "one", "only",
    "onto", "or", "other", "others", "otherwise", "ought", "our", "ours", "ourselves", "out",
    "outside", "over", "own", "per", "perhaps", "quite", "rather", "same", "several", "shall",
    "she", "should", "since", "so", "some", "somebody", "somehow", "someone", "something", "sometime",
    "sometimes", "somewhere", "still", "such", "than", "that", "the", "their", "theirs", "them",
    "themselves", "then", "thence", "there", "thereafter", "thereby", "therefore", "therein", "thereupon", "these",
    "they", "this", "those", "though", "through", "throughout", "thru", "thus", "to", "together",
    "too", "toward", "towards", "under", "underneath", "unless", "until", "unto", "up", "upon",
    "us", "very", "via", "was", "we", "well", "were", "what", "whatever", "when",
    "whence", "whenever", "where", "whereafter", "whereas", "whereby", "wherein", "whereupon", "wherever", "whether",
    "which", "while", "whither", "who", "whoever", "whole", "whom", "whose", "why", "will",
    "with", "within", "without", "would", "yet", "you", "your", "yours", "yourself", "yourselves",
    "s", "t", "d", "ll", "m", "re", "ve", "don", "didn", "doesn",
    "isn", "wasn", "weren", "won", "wouldn", "couldn", "shouldn", "hasn", "haven", "hadn",
    "aren", "ain", "let", "lets", "like", "get", "got", "gets", "go", "goes",
    "going", "went", "come", "came", "say", "said", "says", "make", "made", "two",
    "first", "last", "also", "yes", "oh", "ok", "okay", "mr", "mrs", "ms",
};

}  // namespace veracity
