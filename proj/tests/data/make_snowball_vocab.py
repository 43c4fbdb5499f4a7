#!/usr/bin/env python3
"""Regenerate the Snowball reference vocabularies used by the stemmer tests.

Words come from the wordfreq frequency lists; stems come from the official
Snowball-generated Python stemmers (snowballstemmer package). Each output line
is `word<TAB>stem<TAB>stem(stem)`.

    pip install wordfreq snowballstemmer
    python3 make_snowball_vocab.py
"""
import re
import pathlib

import snowballstemmer
import wordfreq

EXTRA = {
    "en": """skies skis sky news bias atlas cosmos andes howe idly gently ugly early
        only singly dying lying tying inning innings outing canning herring earring
        proceed proceeded exceed exceeding succeed succeeded generate generously
        communism community emergency university organize organs past paste pasted
        arsenal arsenic later laterally interest international consign consigned
        consigning consignment consist consisted consistency consistent consistently
        consolation consolations generalization cries ties ties gas gaps kiwis hopping
        hoping filing filling fizzed luxuriating happiness hopefulness electrical
        electricity conditional rational relational valenci hesitanci digitizer
        conformabli radicalli differentli vileli analogousli vietnamization
        predication operator feudalism decisiveness hopefulness callousness formaliti
        sensitiviti sensibiliti triplicate formative formalize electriciti electrical
        hopeful goodness revival allowance inference airliner gyroscopic adjustable
        defensible irritant replacement adjustment dependent adoption homologou
        communism activate angulariti homologous effective bowdlerize probate rate
        cease controll roll yelling yell say sayings lay playing""",
    "it": """divano divani divanetto quando questo qui quella aiuola abbandonate
        abbandonata abbandonati abbandonato abbandonava abbandono abbaglianti
        accadevano accadimento accademia accordatura capacità grandissima
        impossibilità attivamente sicuramente probabilmente velocemente dandogliela
        mangiandolo prendendone dirglielo portarmelo vederlo farsi andarsene
        crisi crisis biologia biologie rivoluzione rivoluzioni soluzione soluzioni
        istruzione distruzione confusione illusioni coerenza presenza lontananza
        attrice attrici lavoratore lavoratori interessante interessanti
        possibile possibili incredibile incredibili comunismo comunisti artista
        artiste artistico artistiche caratteristica caratteristiche nazionale
        formazione informazioni movimento movimenti sentimento sentimenti
        cerchiamo parlavamo partiremo finirebbero finissero capiscono
        pietà città università libertà verità età più perché così già può
        amica amiche amichevole lunghe lunghi luoghi fuochi""",
}


def build(lang, name, target=6000):
    stemmer = snowballstemmer.stemmer(name)
    if lang == "it":
        pattern = re.compile(r"^[a-zàèéìíòóùú]+$")
    else:
        pattern = re.compile(r"^[a-z]+$")
    words = [w for w in wordfreq.top_n_list(lang, 60000) if pattern.match(w)]
    head, tail = words[:3000], words[3000:]
    step = max(1, len(tail) // (target - 3000))
    chosen = head + tail[::step][: target - 3000]
    seen = set()
    out = []
    for w in chosen + EXTRA[lang].split():
        if w in seen:
            continue
        seen.add(w)
        s = stemmer.stemWord(w)
        out.append(f"{w}\t{s}\t{stemmer.stemWord(s)}")
    path = pathlib.Path(__file__).with_name(f"snowball_{lang}.tsv")
    path.write_text("\n".join(out) + "\n", encoding="utf-8")
    print(path, len(out))


if __name__ == "__main__":
    build("it", "italian")
    build("en", "english")
