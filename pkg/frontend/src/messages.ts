import type { ChatMessage } from './types.js';

// Minimal markdown rendering: fenced code blocks become <pre><code> with
// a copy button, everything else is plain text paragraphs. All content
// goes through textContent, never innerHTML.
export function renderMessage(message: ChatMessage): HTMLElement {
  const bubble = document.createElement('article');
  bubble.className = `chat-bubble chat-${message.role}`;
  bubble.dataset.seq = String(message.seq);

  const parts = message.markdown.split(/```(\w*)\n([\s\S]*?)```/g);
  // split() yields [text, lang, code, text, lang, code, ..., text]
  for (let i = 0; i < parts.length; i += 3) {
    const text = parts[i].trim();
    if (text) {
      const para = document.createElement('p');
      para.textContent = text;
      bubble.appendChild(para);
    }
    if (i + 2 < parts.length) {
      bubble.appendChild(renderCodeBlock(parts[i + 1], parts[i + 2]));
    }
  }
  return bubble;
}

function renderCodeBlock(lang: string, source: string): HTMLElement {
  const wrapper = document.createElement('div');
  wrapper.className = 'code-block';

  const copy = document.createElement('button');
  copy.className = 'code-copy';
  copy.textContent = 'Copy';
  copy.addEventListener('click', () => {
    void navigator.clipboard?.writeText(source);
    copy.textContent = 'Copied';
  });
  wrapper.appendChild(copy);

  const pre = document.createElement('pre');
  const code = document.createElement('code');
  if (lang) code.className = `language-${lang}`;
  code.textContent = source;
  pre.appendChild(code);
  wrapper.appendChild(pre);
  return wrapper;
}

export function renderMessageList(container: HTMLElement, messages: ChatMessage[]): void {
  container.replaceChildren(...messages.map(renderMessage));
}
