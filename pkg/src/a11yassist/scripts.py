"""Default deterministic script for the scripted model client.

Entries are matched first-wins against the full rendered prompt, which
always begins with an agent header like "[responder instructions]", so
matchers can key on agent kind plus request keywords.
"""

from __future__ import annotations

from .agents import REMINDER_SENTINEL, ScriptEntry, ScriptedClient

HOVER_BUTTON_RESPONSE = """\
Here is a button with AA-compliant contrast in both default and hover states:

```css
.cta-button {
  color: #ffffff;
  background-color: #005a9c; /* 7.04:1 against white text */
}
.cta-button:hover {
  color: #ffffff;
  background-color: #003b66; /* 10.8:1, stays compliant on hover */
}
```

```html
<button class="cta-button">Get started</button>
```

The hover state keeps the same foreground so the ratio never drops below
4.5:1. Reference: https://webaim.org/resources/contrastchecker/
"""

SUBSCRIBE_FORM_RESPONSE = """\
Here is a subscription form with every control labeled and a natural tab order:

```html
<form action="/subscribe" method="post">
  <label for="email">Email address</label>
  <input type="email" id="email" name="email" autocomplete="email">
  <button type="submit">Subscribe</button>
</form>
```

The label is associated via for/id so screen readers announce it, and no
tabindex overrides are needed. See https://www.w3.org/WAI/tutorials/forms/labels/
"""

HI_RESPONSE = "Hello! What would you like to build today?"

FORM_LABEL_FIX = """\
The checker log shows an unlabeled form control in the file you are working on.
Associate a visible label with it:

```html
<label for="email">Email address</label>
<input type="email" id="email" name="email">
```
"""

IMG_ALT_FIX = """\
The checker log shows an image without alternative text. Describe the image
content in the alt attribute:

```html
<img src="harbor.jpg" alt="Fishing boats moored in a harbor at dawn">
```
"""

GENERIC_RESPONSE = """\
Here is a starting point; tell me more about the component you need.

```html
<main>
  <h1>Page title</h1>
</main>
```
"""


def default_script() -> ScriptedClient:
    return ScriptedClient(
        [
            # Responder
            ScriptEntry(
                r"\[responder instructions\](?s:.*)## PROMPT\nHi\b",
                HI_RESPONSE,
                regex=True,
            ),
            ScriptEntry(
                r"\[responder instructions\](?s:.*)button(?s:.*)hover",
                HOVER_BUTTON_RESPONSE,
                regex=True,
            ),
            ScriptEntry(
                r"\[responder instructions\](?s:.*)subscri(?:be|ption)",
                SUBSCRIBE_FORM_RESPONSE,
                regex=True,
            ),
            ScriptEntry(
                r"\[responder instructions\]", GENERIC_RESPONSE, regex=True
            ),
            # Correction: keyed to the rule ids present in the log excerpt.
            ScriptEntry(
                r"\[correction instructions\](?s:.*)form-label",
                FORM_LABEL_FIX,
                regex=True,
            ),
            ScriptEntry(
                r"\[correction instructions\](?s:.*)img-alt",
                IMG_ALT_FIX,
                regex=True,
            ),
            ScriptEntry(
                r"\[correction instructions\]",
                "Review the remaining checker findings and fix them file by file.\n"
                "```html\n<!-- see the findings panel for exact locations -->\n```",
                regex=True,
            ),
            # Reminder
            ScriptEntry(
                r"\[reminder instructions\](?s:.*)hover",
                "Visually inspect the button in both default and hover states to "
                "confirm the colour contrast after pasting.",
                regex=True,
            ),
            ScriptEntry(
                r"\[reminder instructions\](?s:.*)subscri(?:be|ption)",
                "After pasting, confirm each form field keeps its label "
                "association and tab through the form once to verify keyboard "
                "navigation.",
                regex=True,
            ),
            ScriptEntry(
                r"\[reminder instructions\]", REMINDER_SENTINEL, regex=True
            ),
            # Mandatory catch-all fallback.
            ScriptEntry("", GENERIC_RESPONSE),
        ]
    )
