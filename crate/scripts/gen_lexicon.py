from wordfreq import top_n_list
lex = {}
for line in open('en-lexicon.txt', encoding='utf-8'):
    if line.startswith(';;;'): continue
    parts = line.split()
    if len(parts) != 2: continue
    w, t = parts
    lex.setdefault(w, t)
M = {'NN':'Noun-singular','NNS':'Noun-plural','NNP':'Proper-noun','NNPS':'Proper-noun',
 'JJ':'Adjective','JJR':'Adjective','JJS':'Adjective','VB':'Verb-base','VBP':'Verb-base','VBG':'Verb-base',
 'VBD':'Verb-past','VBN':'Verb-past-participle','VBZ':'Verb-3rd','RB':'Adverb','RBR':'Adverb','RBS':'Adverb',
 'WRB':'Adverb','RP':'Adverb','DT':'Determiner','PDT':'Determiner','WDT':'Determiner','IN':'Preposition',
 'TO':'Preposition','MD':'Modal','PRP':'Pronoun','PRP$':'Pronoun','WP':'Pronoun','WP$':'Pronoun','EX':'Pronoun',
 'CC':'Conjunction','CD':'Number','UH':'Unknown','FW':'Unknown','SYM':'Symbol','LS':'Symbol','POS':'Symbol'}
CLOSED = {'Determiner','Preposition','Modal','Pronoun','Conjunction'}
# Nouns the Brill lexicon lists as verbs first; in assertion messages they are subjects.
OVERRIDE = {'file':'Noun-singular','test':'Noun-singular','value':'Noun-singular','result':'Noun-singular',
 'list':'Noun-singular','map':'Noun-singular','set':'Noun-singular','key':'Noun-singular','name':'Noun-singular',
 'error':'Noun-singular','state':'Noun-singular','call':'Noun-singular','return':'Noun-singular','match':'Noun-singular',
 'index':'Noun-singular','check':'Noun-singular','count':'Noun-singular','size':'Noun-singular','type':'Noun-singular',
 'message':'Noun-singular','request':'Noun-singular','response':'Noun-singular','order':'Noun-singular',
 'null':'Adjective','invalid':'Adjective','expected':'Verb-past-participle'}
closed, opened = {}, {}
n = 0
for w in top_n_list('en', 40000):
    if not w.isalpha() or not w.isascii(): continue
    t = lex.get(w)
    if t is None: continue
    tag = M.get(t)
    if tag is None or tag == 'Proper-noun': continue
    tag = OVERRIDE.get(w, tag)
    if tag in CLOSED:
        closed[w] = tag
    elif len(opened) < 10000:
        opened[w] = tag
for w, t in OVERRIDE.items():
    if w not in closed: opened[w] = t
hdr = ("# Derived from the Brill tagger lexicon (MIT license; Brown corpus and Penn Treebank),\n"
       "# restricted to frequent English words and mapped onto the condensed tag set.\n")
with open('/root/crate/crates/core/data/closed_class.tsv','w') as f:
    f.write("# assertlint closed-class lexicon v1\n"+hdr)
    for w in sorted(closed): f.write(f"{w}\t{closed[w]}\n")
with open('/root/crate/crates/core/data/open_class.tsv','w') as f:
    f.write("# assertlint open-class lexicon v1\n"+hdr)
    for w in sorted(opened): f.write(f"{w}\t{opened[w]}\n")
print(len(closed), len(opened))
